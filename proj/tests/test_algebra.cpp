#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qnc/operator_io.hpp"
#include "qnc/operators.hpp"
#include "test_helpers.hpp"

using namespace qnc;
using qnc::testing::diag_op;
using qnc::testing::dist;

namespace {
const Lattice lat(1, 2);
}

TEST_CASE("regions are canonical and ordered") {
    Region a({{2}, {0}, {1}});
    CHECK(a == Region::chain(3));
    CHECK(a.sites().front() == Site{0});
    CHECK_THROWS_AS(Region({{0}, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(Region({{0}, {1, 2}}), std::invalid_argument);

    Region box = Region::box({0, 0}, {1, 1});
    CHECK(box.size() == 4);
    CHECK(box.diameter() == 1);
    CHECK(Region::chain(4).diameter() == 3);
    CHECK(Region().diameter() == 0);

    CHECK(Region::chain(4).contains(Region({{1}, {3}})));
    CHECK(Region::chain(4).difference(Region::chain(2)) == Region({{2}, {3}}));
    CHECK(Region::chain(2).unite(Region::single({5})) == Region({{0}, {1}, {5}}));
}

TEST_CASE("dimension cap is enforced") {
    CHECK(hilbert_dim(lat, Region::chain(12)) == 4096);
    CHECK_THROWS_AS(hilbert_dim(lat, Region::chain(13)), DimensionCapError);
    CHECK_THROWS_AS(LocalOperator::identity(lat, Region::chain(13)), DimensionCapError);
}

TEST_CASE("embed: identity and Kronecker order") {
    const Region pair = Region::chain(2);
    CHECK(dist(embed(LocalOperator::identity(lat, Region::single({0})), pair),
               LocalOperator::identity(lat, pair)) == 0.0);

    // 1 (x) sigma_z with lexicographic legs: diag(1,-1,1,-1)
    const LocalOperator z1 = pauli_site(lat, 'z', {1});
    const LocalOperator e = embed(z1, pair);
    const LocalOperator expect = diag_op(lat, pair, {1.0, -1.0, 1.0, -1.0});
    CHECK(dist(e, expect) == 0.0);

    // sigma_z (x) 1: diag(1,1,-1,-1)
    const LocalOperator e0 = embed(pauli_site(lat, 'z', {0}), pair);
    CHECK(dist(e0, diag_op(lat, pair, {1.0, 1.0, -1.0, -1.0})) == 0.0);

    CHECK_THROWS_AS(embed(z1, Region::single({0})), std::invalid_argument);
}

TEST_CASE("embed preserves the normalized trace and is a *-homomorphism") {
    const Region target = Region::chain(3);
    for (int i = 0; i < 20; ++i) {
        const LocalOperator f = random_operator(lat, Region::chain(2), 500 + i);
        const LocalOperator g = random_operator(lat, Region::chain(2), 700 + i);
        CHECK(std::abs(normalized_trace(embed(f, target)) - normalized_trace(f)) < 1e-14);
        CHECK(std::abs(operator_norm(embed(f, target)) - operator_norm(f)) < 1e-12);
        CHECK(dist(embed(f, target) * embed(g, target), embed(f * g, target)) < 1e-12);
        CHECK(dist(adjoint(embed(f, target)), embed(adjoint(f), target)) < 1e-12);
        // off-center support with permuted legs
        const LocalOperator h = random_operator(lat, Region({{0}, {2}}), 800 + i);
        CHECK(std::abs(operator_norm(embed(h, target)) - operator_norm(h)) < 1e-12);
    }
}

TEST_CASE("normalized trace basics") {
    CHECK(normalized_trace(LocalOperator::identity(lat, Region::chain(3))) == Complex(1.0, 0.0));
    CHECK(normalized_trace(pauli_site(lat, 'z', {0})) == Complex(0.0, 0.0));
    CHECK(normalized_trace(diag_op(lat, Region::single({0}), {3.0, 1.0})) == Complex(2.0, 0.0));
}

TEST_CASE("partial trace: product factorization and the empty region") {
    const Region pair = Region::chain(2);
    const LocalOperator a = random_hermitian(lat, Region::single({0}), 11);
    const LocalOperator b = random_hermitian(lat, Region::single({1}), 12);
    const LocalOperator prod = embed(a, pair) * embed(b, pair);
    const LocalOperator traced = partial_trace(prod, Region::single({1}));
    CHECK(dist(traced, normalized_trace(b) * embed(a, pair)) < 1e-13);

    const LocalOperator f = random_operator(lat, pair, 13);
    CHECK(dist(partial_trace(f, Region()), f) == 0.0);
    CHECK_THROWS_AS(partial_trace(a, Region::single({5})), std::invalid_argument);
}

TEST_CASE("partial trace is a unital positive trace-preserving projection") {
    const Region reg = Region::chain(3);
    const Region x = Region::single({1});
    const LocalOperator one = LocalOperator::identity(lat, reg);
    CHECK(dist(partial_trace(one, x), one) == 0.0);
    for (int i = 0; i < 20; ++i) {
        const LocalOperator f = random_hermitian(lat, reg, 900 + i);
        CHECK(std::abs(normalized_trace(partial_trace(f, x)) - normalized_trace(f)) < 1e-12);
        const LocalOperator once = partial_trace(f, x);
        CHECK(dist(partial_trace(once, x), once) < 1e-12);
        const LocalOperator pos = adjoint(f) * f;
        CHECK(is_positive(partial_trace(pos, x), 1e-12));
    }
}

TEST_CASE("partial trace composes along nested regions") {
    const Region reg = Region::chain(3);
    for (int i = 0; i < 20; ++i) {
        const LocalOperator f = random_operator(lat, reg, 1100 + i);
        const Region x = Region::single({0});
        const Region y({{0}, {2}});
        CHECK(dist(partial_trace(partial_trace(f, x), y.difference(x)), partial_trace(f, y)) <
              1e-12);
    }
}

TEST_CASE("partial trace bimodule property") {
    const Region reg = Region::chain(2);
    const Region x = Region::single({1});
    for (int i = 0; i < 20; ++i) {
        const LocalOperator f = embed(random_operator(lat, Region::single({0}), 1300 + i), reg);
        const LocalOperator g = random_operator(lat, reg, 1400 + i);
        CHECK(dist(partial_trace(f * g, x), f * partial_trace(g, x)) < 1e-11);
        CHECK(dist(partial_trace(g * f, x), partial_trace(g, x) * f) < 1e-11);
    }
}

TEST_CASE("hermiticity and positivity predicates") {
    CHECK(is_hermitian(LocalOperator::identity(lat, Region::chain(2))));
    CHECK(is_positive(LocalOperator::identity(lat, Region::chain(2))));
    const LocalOperator sx = pauli_site(lat, 'x', {0});
    CHECK(is_hermitian(sx));
    CHECK_FALSE(is_positive(sx));  // eigenvalue -1
    const LocalOperator g = random_operator(lat, Region::chain(2), 77);
    CHECK(is_positive(adjoint(g) * g, 1e-12));
    CHECK_FALSE(is_hermitian(g, 1e-12));
    CHECK_THROWS_AS(is_hermitian(g, -1.0), std::invalid_argument);
}

TEST_CASE("random generators are deterministic and well-formed") {
    const Region reg = Region::chain(2);
    CHECK(dist(random_hermitian(lat, reg, 5), random_hermitian(lat, reg, 5)) == 0.0);
    CHECK(dist(random_hermitian(lat, reg, 5), random_hermitian(lat, reg, 6)) > 1e-3);
    CHECK(is_hermitian(random_hermitian(lat, reg, 5), 0.0));

    const DensityOperator rho = random_state(lat, reg, 5);
    CHECK(rho.min_eigenvalue() > 0.0);
    CHECK(std::abs(normalized_trace(rho.op()) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(dist(rho.op(), random_state(lat, reg, 5).op()) == 0.0);
}

TEST_CASE("density operator validation") {
    CHECK_THROWS_AS(DensityOperator(pauli_site(lat, 'z', {0})), std::domain_error);  // not positive
    CHECK_THROWS_AS(DensityOperator(2.0 * LocalOperator::identity(lat, Region::single({0}))),
                    std::domain_error);  // trace 2
    const DensityOperator rho = random_state(lat, Region::chain(2), 9);
    CHECK(dist(rho.power(1.0), rho.op()) < 1e-13);
    CHECK(dist(rho.power(0.0), LocalOperator::identity(lat, Region::chain(2))) == 0.0);
}

TEST_CASE("operator file format round trip and rejection") {
    const LocalOperator f = random_operator(lat, Region({{0}, {3}}), 31);
    const std::string path = "test_operator_roundtrip.json";
    save_operator(f, path);
    const LocalOperator g = load_operator(path);
    CHECK(g.support() == f.support());
    CHECK(g.lattice() == f.lattice());
    CHECK(dist(f, g) == 0.0);
    std::remove(path.c_str());

    nlohmann::json bad = operator_to_json(f);
    bad["matrix"].erase(0);  // row count no longer matches n^|support|
    CHECK_THROWS_AS(operator_from_json(bad), std::invalid_argument);
    nlohmann::json bad2 = operator_to_json(f);
    bad2["lattice"]["n"] = 3;
    CHECK_THROWS_AS(operator_from_json(bad2), std::exception);
}
