#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qnc/lp_norms.hpp"
#include "qnc/orlicz.hpp"
#include "test_helpers.hpp"

using namespace qnc;
using qnc::testing::diag_op;
using qnc::testing::dist;

namespace {

const Lattice lat(1, 2);
const TraceSpec tr_norm = TraceSpec::normalized();
constexpr double kInf = std::numeric_limits<double>::infinity();

LocalOperator random_unitary(const Region& reg, std::uint64_t seed) {
    const auto h = herm_eig(random_hermitian(lat, reg, seed).matrix());
    Eigen::VectorXcd phase(h.values.size());
    for (Eigen::Index i = 0; i < phase.size(); ++i)
        phase(i) = std::exp(Complex(0.0, h.values(i)));
    return LocalOperator(lat, reg, h.vectors * phase.asDiagonal() * h.vectors.adjoint());
}

} // namespace

TEST_CASE("Orlicz function kinds and parameters") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    CHECK(p2(3.0) == doctest::Approx(9.0));
    CHECK(p2.a_phi() == 0.0);
    CHECK(std::isinf(p2.b_phi()));

    CHECK(OrliczFunction::exp_minus_one()(1.0) == doctest::Approx(std::exp(1.0) - 1.0));
    CHECK(OrliczFunction::cosh_minus_one()(0.0) == 0.0);
    CHECK(OrliczFunction::llogl()(2.0) == doctest::Approx(2.0 * std::log(3.0)));

    // piecewise custom with a finite b: infinity past the last knot
    const OrliczFunction cut = OrliczFunction::custom({{0.0, 0.0}, {1.0, 0.0}, {2.0, 1.0}}, true);
    CHECK(cut.a_phi() == doctest::Approx(1.0));
    CHECK(cut.b_phi() == doctest::Approx(2.0));
    CHECK(cut(0.5) == 0.0);
    CHECK(cut(1.5) == doctest::Approx(0.5));
    CHECK(std::isinf(cut(2.5)));

    // linear extension keeps b = inf
    const OrliczFunction ext = OrliczFunction::custom({{0.0, 0.0}, {1.0, 2.0}}, false);
    CHECK(std::isinf(ext.b_phi()));
    CHECK(ext(4.0) == doctest::Approx(8.0));

    CHECK_THROWS_AS(OrliczFunction::power(0.5), std::invalid_argument);
    // concave knots rejected
    CHECK_THROWS_AS(OrliczFunction::custom({{0.0, 0.0}, {1.0, 2.0}, {2.0, 2.5}}, true),
                    std::invalid_argument);
    // must start at (0, 0)
    CHECK_THROWS_AS(OrliczFunction::custom({{0.0, 0.5}, {1.0, 1.0}}, true),
                    std::invalid_argument);
    // identically zero with linear extension cannot reach infinity
    CHECK_THROWS_AS(OrliczFunction::custom({{0.0, 0.0}, {1.0, 0.0}}, false),
                    std::invalid_argument);
    CHECK_THROWS_AS(p2(-1.0), std::invalid_argument);
}

TEST_CASE("singular profiles") {
    const Region site = Region::single({0});
    const SingularProfile p = singular_profile(diag_op(lat, site, {3.0, 1.0}), tr_norm);
    REQUIRE(p.steps() == 2);
    CHECK(p.values[0] == doctest::Approx(3.0));
    CHECK(p.values[1] == doctest::Approx(1.0));
    CHECK(p.weights[0] == doctest::Approx(0.5));
    CHECK(p.weights[1] == doctest::Approx(0.5));
    CHECK(p.total_mass == doctest::Approx(1.0));
    CHECK(p.value_at(0.25) == doctest::Approx(3.0));
    CHECK(p.value_at(0.75) == doctest::Approx(1.0));
    CHECK(p.value_at(1.5) == 0.0);

    // constant multiples of the identity collapse to a single step
    const Region reg = Region::chain(2);
    const SingularProfile pc =
        singular_profile(Complex(-2.5, 0.0) * LocalOperator::identity(lat, reg), tr_norm);
    REQUIRE(pc.steps() == 1);
    CHECK(pc.values[0] == doctest::Approx(2.5));
    CHECK(pc.weights[0] == doctest::Approx(1.0));

    // unitary invariance
    for (int i = 0; i < 10; ++i) {
        const LocalOperator f = random_operator(lat, reg, 100 + i);
        const LocalOperator u = random_unitary(reg, 200 + i);
        const LocalOperator v = random_unitary(reg, 300 + i);
        const SingularProfile a = singular_profile(f, tr_norm);
        const SingularProfile b = singular_profile(u * f * v, tr_norm);
        const double scale = 1.0 + a.max_value();
        CHECK(profile_excess(a, 1.0, b) / scale < 1e-12);
        CHECK(profile_excess(b, 1.0, a) / scale < 1e-12);
    }

    // the standard trace weighs each index with mass 1
    const SingularProfile ps = singular_profile(diag_op(lat, site, {3.0, 1.0}),
                                                TraceSpec::standard());
    CHECK(ps.total_mass == doctest::Approx(2.0));
    CHECK(ps.weights[0] == doctest::Approx(1.0));

    // weighted traces demand diagonal operators
    const TraceSpec weighted = TraceSpec::weighted({0.3, 0.7});
    CHECK(singular_profile(diag_op(lat, site, {1.0, 2.0}), weighted).total_mass ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(singular_profile(pauli_site(lat, 'x', {0}), weighted),
                    std::invalid_argument);
}

TEST_CASE("classical rearrangement") {
    const SingularProfile sorted = classical_rearrangement({3.0, 1.0}, {0.5, 0.5});
    CHECK(sorted.values == std::vector<double>{3.0, 1.0});

    const SingularProfile flipped = classical_rearrangement({1.0, 3.0}, {0.5, 0.5});
    CHECK(flipped.values == std::vector<double>{3.0, 1.0});
    CHECK(flipped.weights == std::vector<double>{0.5, 0.5});

    const SingularProfile merged = classical_rearrangement({2.0, -2.0, 1.0}, {0.2, 0.3, 0.5});
    REQUIRE(merged.steps() == 2);
    CHECK(merged.values[0] == doctest::Approx(2.0));
    CHECK(merged.weights[0] == doctest::Approx(0.5));
    CHECK(merged.total_mass == doctest::Approx(1.0));

    // agrees with singular_profile on diagonal matrices
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
        std::vector<Complex> d = {rng.cgaussian(), rng.cgaussian()};
        const LocalOperator f = diag_op(lat, Region::single({0}), d);
        const SingularProfile a = singular_profile(f, tr_norm);
        const SingularProfile b =
            classical_rearrangement({std::abs(d[0]), std::abs(d[1])}, {0.5, 0.5});
        REQUIRE(a.steps() == b.steps());
        for (std::size_t k = 0; k < a.steps(); ++k) {
            CHECK(a.values[k] == doctest::Approx(b.values[k]).epsilon(1e-13));
            CHECK(a.weights[k] == doctest::Approx(b.weights[k]).epsilon(1e-13));
        }
    }
}

TEST_CASE("trace-integral identity") {
    const Region site = Region::single({0});
    CHECK(trace_phi(diag_op(lat, site, {3.0, 1.0}), OrliczFunction::power(2.0), tr_norm) ==
          doctest::Approx(5.0).epsilon(1e-13));
    CHECK(trace_phi(LocalOperator::zero(lat, site), OrliczFunction::exp_minus_one(), tr_norm) ==
          0.0);

    // b_phi = 1 with a singular value beyond it: both sides infinite
    const OrliczFunction gate = OrliczFunction::custom({{0.0, 0.0}, {1.0, 0.0}}, true);
    CHECK(std::isinf(trace_phi(diag_op(lat, site, {2.0, 0.5}), gate, tr_norm)));

    for (int i = 0; i < 20; ++i) {
        const LocalOperator f = random_operator(lat, Region::chain(2), 400 + i);
        for (const auto& phi :
             {OrliczFunction::power(1.5), OrliczFunction::llogl(), OrliczFunction::exp_minus_one()})
            CHECK(std::isfinite(trace_phi(f, phi, tr_norm)));
    }
}

TEST_CASE("weighted traces on the diagonal subalgebra") {
    const Region site = Region::single({0});
    const TraceSpec w = TraceSpec::weighted({0.3, 0.7});
    const LocalOperator f = diag_op(lat, site, {2.0, -1.0});
    // tau_w(phi(|f|)) = 0.3 phi(2) + 0.7 phi(1)
    CHECK(trace_phi(f, OrliczFunction::power(2.0), w) ==
          doctest::Approx(0.3 * 4.0 + 0.7 * 1.0).epsilon(1e-13));
    // the gauge solves sum w_i phi(|f_i|/lambda) = 1 for the power case
    const double expect = std::sqrt(0.3 * 4.0 + 0.7 * 1.0);
    CHECK(luxemburg_norm(f, OrliczFunction::power(2.0), w) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(trace_phi(pauli_site(lat, 'x', {0}), OrliczFunction::power(2.0), w),
                    std::invalid_argument);
    CHECK_THROWS_AS(TraceSpec::weighted({0.5, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(trace_phi(diag_op(lat, Region::chain(2), {1., 1., 1., 1.}),
                              OrliczFunction::power(2.0), w),
                    std::invalid_argument);
}

TEST_CASE("Luxemburg norm closed forms") {
    const Region site = Region::single({0});
    const LocalOperator f31 = diag_op(lat, site, {3.0, 1.0});
    CHECK(luxemburg_norm(f31, OrliczFunction::power(2.0), tr_norm) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

    const LocalOperator one2 = LocalOperator::identity(lat, Region::chain(2));
    CHECK(luxemburg_norm(one2, OrliczFunction::exp_minus_one(), tr_norm) ==
          doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));

    CHECK(luxemburg_norm(LocalOperator::zero(lat, site), OrliczFunction::power(2.0), tr_norm) ==
          0.0);

    // phi = 0 on [0,1], infinite beyond: the gauge is exactly the sup norm
    const OrliczFunction gate = OrliczFunction::custom({{0.0, 0.0}, {1.0, 0.0}}, true);
    CHECK(luxemburg_norm(f31, gate, tr_norm) == doctest::Approx(3.0).epsilon(1e-14));

    // scaling consistency is machine exact through the covariant bracket
    for (int i = 0; i < 10; ++i) {
        const LocalOperator f = random_operator(lat, Region::chain(2), 500 + i);
        const double n1 = luxemburg_norm(f, OrliczFunction::llogl(), tr_norm);
        const double n2 = luxemburg_norm(Complex(2.0, 0.0) * f, OrliczFunction::llogl(), tr_norm);
        CHECK(n2 == doctest::Approx(2.0 * n1).epsilon(1e-12));
    }

    // power gauge matches the beta = 0 lps norm
    const DensityOperator free_state(one2);
    for (int i = 0; i < 10; ++i) {
        const LocalOperator f = random_hermitian(lat, Region::chain(2), 600 + i);
        for (double p : {1.0, 2.0, 3.0})
            CHECK(luxemburg_norm(f, OrliczFunction::power(p), tr_norm) ==
                  doctest::Approx(lps_norm(f, free_state, p, 0.5)).epsilon(1e-10));
    }
}

TEST_CASE("Kunze membership witness") {
    const Region site = Region::single({0});
    CHECK(kunze_membership(diag_op(lat, site, {5.0, 1.0}), OrliczFunction::power(2.0), tr_norm) ==
          1.0);
    const OrliczFunction gate = OrliczFunction::custom({{0.0, 0.0}, {1.0, 0.0}}, true);
    const LocalOperator f = diag_op(lat, site, {2.0, 0.5});
    const double witness = kunze_membership(f, gate, tr_norm);
    CHECK(witness == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::isfinite(trace_phi(witness * f, gate, tr_norm)));
}

TEST_CASE("ddp norm coincides with the Kunze gauge") {
    for (int i = 0; i < 30; ++i) {
        const LocalOperator f = random_operator(lat, Region::chain(2), 700 + i);
        for (const auto& phi : {OrliczFunction::power(2.0), OrliczFunction::exp_minus_one(),
                                OrliczFunction::custom({{0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}}, true)}) {
            const double kunze = luxemburg_norm(f, phi, tr_norm);
            CHECK(std::abs(ddp_norm(f, phi, tr_norm) - kunze) <= 1e-12 * std::max(1.0, kunze));
        }
    }
    // diagonal case: the classical Orlicz norm of the eigenvalue sequence
    const LocalOperator d = diag_op(lat, Region::single({0}), {1.0, 1.0});
    CHECK(ddp_norm(d, OrliczFunction::exp_minus_one(), tr_norm) ==
          doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("function norm axioms and the Fatou property") {
    Rng rng(11);
    std::vector<SingularProfile> samples;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> v, w;
        const int steps = 1 + static_cast<int>(rng.uniform() * 5);
        for (int k = 0; k < steps; ++k) {
            v.push_back(0.05 + 3.0 * rng.uniform());
            w.push_back(0.1 + rng.uniform());
        }
        samples.push_back(classical_rearrangement(v, w));
    }
    const auto rep = function_norm_axiom_check(OrliczFunction::power(2.0), samples);
    CHECK(rep.pass);
    CHECK(rep.homogeneity_dev <= 1e-12);
    CHECK(rep.fatou_gap <= 1e-8);

    const auto rep2 = function_norm_axiom_check(OrliczFunction::llogl(), samples);
    CHECK(rep2.pass);

    // scaled profile: gauge doubles exactly
    const SingularProfile p = classical_rearrangement({2.0, 1.0, 0.5}, {0.3, 0.3, 0.4});
    const double n = luxemburg_norm(p, OrliczFunction::exp_minus_one());
    CHECK(luxemburg_norm(p.scaled(2.0), OrliczFunction::exp_minus_one()) ==
          doctest::Approx(2.0 * n).epsilon(1e-14));
    // truncation sequence attains the limit at the last step exactly
    CHECK(luxemburg_norm(p.truncated(3), OrliczFunction::exp_minus_one()) == n);
}

TEST_CASE("contraction certificates for the four certified map classes") {
    const Region reg = Region::chain(2);
    const OrliczFunction phi = OrliczFunction::exp_minus_one();

    const auto inner = contraction_report(
        Superoperator::inner_automorphism(random_unitary(reg, 900)), phi, tr_norm, 60, 901);
    CHECK(inner.map_class == 1);
    CHECK(inner.pass);
    CHECK(inner.max_ratio == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(inner.min_ratio == doctest::Approx(1.0).epsilon(1e-10));

    const auto kraus = contraction_report(
        Superoperator::kraus({random_operator(lat, reg, 902), random_operator(lat, reg, 903)}),
        phi, tr_norm, 60, 904);
    CHECK(kraus.map_class == 2);
    CHECK(kraus.pass);
    CHECK(kraus.max_ratio <= kraus.certified_bound + 1e-9);
    CHECK(kraus.stepwise_excess <= 1e-9);

    // pure CP: single Kraus; a non-unitary V exercises the ||V||^2 bound
    const LocalOperator v = Complex(0.7, 0.0) * random_unitary(reg, 905);
    const auto pure = contraction_report(Superoperator::kraus({v}), phi, tr_norm, 60, 906);
    CHECK(pure.map_class == 3);
    CHECK(pure.pass);
    CHECK(pure.certified_bound == doctest::Approx(0.49).epsilon(1e-10));
    CHECK(pure.max_ratio <= pure.certified_bound + 1e-9);

    const auto trans = contraction_report(Superoperator::transpose_map(lat, reg), phi, tr_norm,
                                          60, 907);
    CHECK(trans.map_class == 4);
    CHECK(trans.pass);
    CHECK(trans.max_ratio == doctest::Approx(1.0).epsilon(1e-10));

    const auto jordan = contraction_report(
        Superoperator::jordan(random_unitary(reg, 908), true), phi, tr_norm, 60, 909);
    CHECK(jordan.map_class == 4);
    CHECK(jordan.pass);

    // unsupported kinds are a class mismatch
    const DensityOperator rho = random_state(lat, reg, 910);
    CHECK_THROWS_AS(contraction_report(block_spin_gce(rho, Region::single({0})), phi, tr_norm,
                                        5, 911),
                    std::invalid_argument);
    CHECK_THROWS_AS(contraction_report(Superoperator::transpose_map(lat, reg), phi,
                                        TraceSpec::weighted({0.5, 0.5, 0.5, 0.5}), 5, 912),
                    std::invalid_argument);
}

TEST_CASE("norms depend on |f| only") {
    for (int i = 0; i < 15; ++i) {
        const LocalOperator f = random_operator(lat, Region::chain(2), 1000 + i);
        const OrliczFunction phi = OrliczFunction::llogl();
        const double n = luxemburg_norm(f, phi, tr_norm);
        CHECK(luxemburg_norm(adjoint(f), phi, tr_norm) == doctest::Approx(n).epsilon(1e-11));
        // |f| = (f* f)^{1/2}
        const auto eig = herm_eig((adjoint(f) * f).matrix());
        Eigen::VectorXd sq(eig.values.size());
        for (Eigen::Index k = 0; k < sq.size(); ++k)
            sq(k) = std::sqrt(std::max(0.0, eig.values(k)));
        const Matrix abs_m = eig.vectors * sq.asDiagonal() * eig.vectors.adjoint();
        const LocalOperator abs_f(lat, Region::chain(2), abs_m);
        CHECK(luxemburg_norm(abs_f, phi, tr_norm) == doctest::Approx(n).epsilon(1e-9));
    }
}
