#include "qnc/selftest.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "qnc/gibbs.hpp"
#include "qnc/lp_norms.hpp"
#include "qnc/orlicz.hpp"

namespace qnc::selftest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Enumerate the non-empty subsets of a region's sites.
std::vector<Region> subsets_of(const Region& r) {
    std::vector<Region> out;
    const auto& sites = r.sites();
    const std::size_t k = sites.size();
    for (std::size_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<Site> chosen;
        for (std::size_t b = 0; b < k; ++b)
            if (mask & (1u << b)) chosen.push_back(sites[b]);
        out.emplace_back(std::move(chosen));
    }
    return out;
}

DensityOperator diagonal_state(const Lattice& lat, const Region& region, Rng& rng) {
    const Eigen::Index dim = hilbert_dim(lat, region);
    Eigen::VectorXd d(dim);
    for (Eigen::Index i = 0; i < dim; ++i) d(i) = 0.05 + std::abs(rng.gaussian());
    d *= static_cast<double>(dim) / d.sum();
    Matrix m = d.cast<Complex>().asDiagonal();
    return DensityOperator(LocalOperator(lat, region, std::move(m)));
}

LocalOperator diagonal_operator(const Lattice& lat, const Region& region, Rng& rng) {
    const Eigen::Index dim = hilbert_dim(lat, region);
    Eigen::VectorXcd d(dim);
    for (Eigen::Index i = 0; i < dim; ++i) d(i) = rng.cgaussian();
    return LocalOperator(lat, region, Matrix(d.asDiagonal()));
}

// Independent classical Luxemburg gauge: plain halving on a fixed wide
// bracket, no shared code with the library's bracketed bisection.
double classical_luxemburg_oracle(const std::vector<double>& values,
                                  const std::vector<double>& weights, const OrliczFunction& phi) {
    double maxv = 0.0;
    for (double v : values) maxv = std::max(maxv, std::abs(v));
    if (maxv == 0.0) return 0.0;
    auto ok = [&](double lam) {
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double x = phi(std::abs(values[i]) / lam);
            if (std::isinf(x)) return false;
            acc += x * weights[i];
        }
        return acc <= 1.0;
    };
    double lo = maxv * 1e-12, hi = maxv * 1e12;
    if (ok(lo)) return lo;
    if (!ok(hi)) return kInf;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

struct Check {
    bool pass = true;
    double worst = 0.0;
    void record(double violation, double tol) {
        worst = std::max(worst, violation);
        if (!(violation <= tol)) pass = false;
    }
};

// --------------------------------------------------------------------------
// criteria
// --------------------------------------------------------------------------

CriterionResult c1_trace_compatibility() {
    CriterionResult r{1, "trace compatibility Tr(Tr_X f) = Tr(f)", false, "", 0};
    const Lattice lat(1, 2);
    Check chk;
    for (int i = 0; i < 200; ++i) {
        const long size = 1 + (i % 3);
        const Region reg = Region::chain(size);
        const LocalOperator f = (i % 2 == 0) ? random_hermitian(lat, reg, 101000 + i)
                                             : random_operator(lat, reg, 101000 + i);
        const Complex tf = normalized_trace(f);
        for (const Region& x : subsets_of(reg))
            chk.record(std::abs(normalized_trace(partial_trace(f, x)) - tf), 1e-12);
    }
    r.pass = chk.pass;
    r.detail = "max |Tr(Tr_X f) - Tr f| = " + fmt(chk.worst) + " (tol 1e-12)";
    return r;
}

CriterionResult c2_unitality() {
    CriterionResult r{2, "norm-family unitality ||1||_{p,s} = 1", false, "", 0};
    const Lattice lat(1, 2);
    const std::vector<Potential> pots = {ising_potential(lat, 1.0, 0.2),
                                         heisenberg_potential(lat, 1.0, 1.0, 1.0, 0.2)};
    Check chk;
    for (const auto& phi : pots)
        for (double beta : {0.1, 0.3, 0.5})
            for (long size = 2; size <= 6; ++size) {
                const DensityOperator rho = gibbs_density(phi, Region::chain(size), beta);
                const LocalOperator one = LocalOperator::identity(lat, rho.support());
                for (double p : {1.0, 1.5, 2.0, 3.0, 4.0})
                    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0})
                        chk.record(std::abs(lps_norm(one, rho, p, s) - 1.0), 1e-10);
            }
    r.pass = chk.pass;
    r.detail = "max |norm - 1| = " + fmt(chk.worst) + " over 750 grid points (tol 1e-10)";
    return r;
}

CriterionResult c3_monotonicity() {
    CriterionResult r{3, "volume monotonicity of ||f||_{p,s} (p >= 2)", false, "", 0};
    const Lattice lat(1, 2);
    const Potential phi = ising_potential(lat, 1.0, 0.2);
    const LocalOperator f = pauli_site(lat, 'z', {0});
    std::vector<Region> vols;
    for (long k = 2; k <= 6; ++k) vols.push_back(Region::chain(k));
    Check chk;
    for (double beta : {0.1, 0.3, 0.5})
        for (double p : {2.0, 3.0, 4.0})
            for (double s : {0.0, 0.5, 1.0}) {
                const auto norms = monotonicity_sweep(phi, beta, f, vols, p, s);
                for (std::size_t i = 1; i < norms.size(); ++i)
                    chk.record(norms[i] - norms[i - 1], 1e-8);
            }
    r.pass = chk.pass;
    r.detail = "max increase along nested volumes = " + fmt(chk.worst) + " (slack 1e-8)";
    return r;
}

CriterionResult c4_kms_consistency() {
    CriterionResult r{4, "||f||_{2,1/2}^2 = <f,f>_{KMS}", false, "", 0};
    const Lattice lat(1, 2);
    const Region reg = Region::chain(2);
    Check chk;
    for (int i = 0; i < 200; ++i) {
        const DensityOperator rho = random_state(lat, reg, 104000 + i);
        const LocalOperator f = (i % 2 == 0) ? random_hermitian(lat, reg, 104500 + i)
                                             : random_operator(lat, reg, 104500 + i);
        const double n2 = lps_norm(f, rho, 2.0, 0.5);
        const Complex k = kms_inner(f, f, rho, 0.5);
        chk.record(std::abs(n2 * n2 - k.real()) + std::abs(k.imag()), 1e-10);
    }
    r.pass = chk.pass;
    r.detail = "max |norm^2 - inner| = " + fmt(chk.worst) + " on 200 samples (tol 1e-10)";
    return r;
}

CriterionResult c5_holder_duality() {
    CriterionResult r{5, "Hoelder pairing and duality estimates", false, "", 0};
    const Lattice lat(1, 2);
    const Region reg = Region::chain(2);
    const double pgrid[3] = {1.5, 2.0, 3.0};
    const double sgrid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    Check ratio_chk, duality_chk, diag_chk;
    for (int i = 0; i < 500; ++i) {
        const DensityOperator rho = random_state(lat, reg, 105000 + i);
        const LocalOperator f = (i % 2 == 0) ? random_hermitian(lat, reg, 105600 + i)
                                             : random_operator(lat, reg, 105600 + i);
        const LocalOperator g = (i % 3 == 0) ? random_operator(lat, reg, 106300 + i)
                                             : random_hermitian(lat, reg, 106300 + i);
        const double p = pgrid[i % 3];
        const double s = sgrid[i % 5];
        ratio_chk.record(holder_check(f, g, rho, p, s).ratio - 1.0, 1e-10);
        if (p < 2.0 && i % 5 == 0) {
            const double est = duality_norm_estimate(f, rho, p, s, 8, 106900 + i);
            const double norm = lps_norm(f, rho, p, s);
            duality_chk.record(est - norm, 1e-10 * std::max(1.0, norm));
        }
    }
    // diagonal subalgebra: the classical lp duality oracle fixes the supremum
    for (int i = 0; i < 40; ++i) {
        Rng rng(107400 + i);
        const DensityOperator rho = diagonal_state(lat, reg, rng);
        const LocalOperator f = diagonal_operator(lat, reg, rng);
        const double p = 1.5, s = sgrid[i % 5];
        double acc = 0.0;
        for (Eigen::Index k = 0; k < f.dim(); ++k)
            acc += rho.op().matrix()(k, k).real() * std::pow(std::abs(f.matrix()(k, k)), p);
        const double classical = std::pow(acc / static_cast<double>(f.dim()), 1.0 / p);
        const double est = duality_norm_estimate(f, rho, p, s, 8, 107800 + i);
        diag_chk.record(std::abs(est - classical), 1e-6);
        diag_chk.record(std::abs(est - lps_norm(f, rho, p, s)), 1e-6);
        diag_chk.record(std::abs(lps_norm(f, rho, p, s) - classical), 1e-6);
    }
    r.pass = ratio_chk.pass && duality_chk.pass && diag_chk.pass;
    r.detail = "max ratio excess " + fmt(ratio_chk.worst) + ", estimate overshoot " +
               fmt(duality_chk.worst) + ", diagonal gap " + fmt(diag_chk.worst);
    return r;
}

CriterionResult c6_gce_properties() {
    CriterionResult r{6, "generalized conditional expectation properties", false, "", 0};
    const Lattice lat(1, 2);
    const Potential phi = ising_potential(lat, 1.0, 0.2);
    Check unital_chk, pos_chk, sym_chk;
    int total = 0;
    for (long size = 2; size <= 4; ++size)
        for (double beta : {0.1, 0.3, 0.5}) {
            const Region vol = Region::chain(size);
            const Region x = Region::single({size - 1});
            const DensityOperator rho = gibbs_density(phi, vol, beta);
            const Superoperator e = block_spin_gce(rho, x);
            const auto rep = gce_property_report(e, rho, 25, 108000 + 100 * size);
            total += rep.samples;
            unital_chk.record(rep.unitality_violation, 1e-12);
            pos_chk.record(rep.positivity_violation, 1e-10);
            sym_chk.record(rep.symmetry_violation, 1e-8);
        }
    r.pass = unital_chk.pass && pos_chk.pass && sym_chk.pass;
    r.detail = "E(1) dev " + fmt(unital_chk.worst) + ", positivity " + fmt(pos_chk.worst) +
               ", symmetry " + fmt(sym_chk.worst) + " over " + std::to_string(total) + " samples";
    return r;
}

CriterionResult c7_semigroup() {
    CriterionResult r{7, "Markov semigroup laws for P_t = e^{t(E - id)}", false, "", 0};
    const Lattice lat(1, 2);
    const Potential phi = ising_potential(lat, 1.0, 0.2);
    const Region vol = Region::chain(3);
    const Region x = Region::single({1});
    const DensityOperator rho = gibbs_density(phi, vol, 0.3);
    const Superoperator l = markov_generator(block_spin_gce(rho, x));
    const LocalOperator one = LocalOperator::identity(lat, vol);
    Check chk0, chk_law, chk_unital, chk_pos, chk_inv, chk_closed;
    for (int i = 0; i < 12; ++i) {
        const LocalOperator f = random_hermitian(lat, vol, 109000 + i);
        chk0.record(operator_norm(semigroup_apply(l, f, 0.0) - f), 1e-12);
        for (double t : {0.1, 0.7})
            for (double s : {0.1, 0.7})
                chk_law.record(operator_norm(semigroup_apply(l, semigroup_apply(l, f, s), t) -
                                             semigroup_apply(l, f, t + s)),
                               1e-10);
        const LocalOperator pos = adjoint(f) * f;
        for (double t : {0.1, 0.7}) {
            chk_pos.record(-herm_eig(semigroup_apply(l, pos, t).matrix()).values.minCoeff(), 1e-10);
            chk_inv.record(std::abs(gibbs_expectation(rho, semigroup_apply(l, f, t)) -
                                    gibbs_expectation(rho, f)),
                           1e-9);
        }
    }
    for (double t : {0.1, 0.7})
        chk_unital.record(operator_norm(semigroup_apply(l, one, t) - one), 1e-12);
    // beta = 0: the GCE is the true conditional expectation Tr_X, so the
    // series must collapse to e^{-t} f + (1 - e^{-t}) E f
    const DensityOperator rho0 = gibbs_density(phi, vol, 0.0);
    const Superoperator e0 = block_spin_gce(rho0, x);
    const Superoperator l0 = markov_generator(e0);
    for (int i = 0; i < 8; ++i) {
        const LocalOperator f = random_hermitian(lat, vol, 109300 + i);
        for (double t : {0.1, 0.7, 1.9}) {
            const LocalOperator closed =
                std::exp(-t) * f + (1.0 - std::exp(-t)) * e0.apply(f);
            chk_closed.record(operator_norm(semigroup_apply(l0, f, t) - closed), 1e-10);
        }
    }
    r.pass = chk0.pass && chk_law.pass && chk_unital.pass && chk_pos.pass && chk_inv.pass &&
             chk_closed.pass;
    r.detail = "P_0 dev " + fmt(chk0.worst) + ", law " + fmt(chk_law.worst) + ", unital " +
               fmt(chk_unital.worst) + ", positivity " + fmt(chk_pos.worst) + ", invariance " +
               fmt(chk_inv.worst) + ", closed form " + fmt(chk_closed.worst);
    return r;
}

CriterionResult c8_equivalence_constant() {
    CriterionResult r{8, "state-equivalence constant and marginal-state probe", false, "", 0};
    const Lattice lat(1, 2);
    Check exact_chk, sharp_chk, growth_chk;
    {
        const Region site = Region::chain(1);
        const DensityOperator rho1(LocalOperator::identity(lat, site));
        Matrix d(2, 2);
        d << 1.5, 0, 0, 0.5;
        const DensityOperator rho2(LocalOperator(lat, site, d));
        exact_chk.record(std::abs(equivalence_constant(rho1, rho2) - 2.0), 1e-12);
    }
    // spectral witness sharpness on random pairs
    for (int i = 0; i < 25; ++i) {
        const Region reg = Region::chain(2);
        const DensityOperator rho1 = random_state(lat, reg, 110000 + i);
        const DensityOperator rho2 = random_state(lat, reg, 110500 + i);
        const LocalOperator inv_sqrt = rho1.power(-0.5);
        const auto eig = herm_eig((inv_sqrt * rho2.op() * inv_sqrt).matrix());
        const Eigen::Index top = eig.values.size() - 1;
        const Matrix p = eig.vectors.col(top) * eig.vectors.col(top).adjoint();
        const LocalOperator witness =
            inv_sqrt * LocalOperator(lat, reg, p) * inv_sqrt;
        const double ratio = (normalized_trace(rho2.op() * witness) /
                              normalized_trace(rho1.op() * witness))
                                 .real();
        sharp_chk.record(std::abs(ratio - eig.values(top)), 1e-8);
    }
    // growth probe on 1-D chains, |X| = 1, beta = 0.1
    const Potential phi = ising_potential(lat, 1.0, 0.2);
    std::vector<double> cs;
    std::ostringstream seq;
    for (long size = 2; size <= 6; ++size) {
        const DensityOperator rho = gibbs_density(phi, Region::chain(size), 0.1);
        const DensityOperator marginal(partial_trace(rho.op(), Region::single({0})));
        cs.push_back(equivalence_constant(rho, marginal));
        seq << (size > 2 ? ", " : "") << cs.back();
    }
    growth_chk.record(cs.back() - 10.0 * cs.front(), 0.0);
    r.pass = exact_chk.pass && sharp_chk.pass && growth_chk.pass;
    r.detail = "|c - 2| = " + fmt(exact_chk.worst) + ", witness gap " + fmt(sharp_chk.worst) +
               ", c(Lambda) = [" + seq.str() + "]";
    return r;
}

CriterionResult c9_trace_integral() {
    CriterionResult r{9, "trace-integral identity tau(phi(|f|)) = sum phi(mu) w", false, "", 0};
    const Lattice lat(1, 2);
    const std::vector<OrliczFunction> phis = {
        OrliczFunction::power(1.0),
        OrliczFunction::power(1.5),
        OrliczFunction::power(2.0),
        OrliczFunction::power(3.0),
        OrliczFunction::exp_minus_one(),
        OrliczFunction::cosh_minus_one(),
        OrliczFunction::llogl(),
        OrliczFunction::custom({{0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}}, true),
        OrliczFunction::custom({{0.0, 0.0}, {0.5, 0.0}, {2.0, 3.0}}, false),
    };
    const TraceSpec trace = TraceSpec::normalized();
    Check chk;
    int infinite_cases = 0;
    for (int i = 0; i < 300; ++i) {
        const Region reg = Region::chain(1 + (i % 2));
        LocalOperator f = (i % 3 == 0) ? random_operator(lat, reg, 111000 + i)
                                       : random_hermitian(lat, reg, 111000 + i);
        if (i % 7 == 0) {
            Rng rng(111600 + i);
            f = diagonal_operator(lat, reg, rng);
        }
        if (i % 11 == 0) f = 3.0 * f;  // push singular values past finite b_phi
        const OrliczFunction& phi = phis[i % phis.size()];

        // spectral route through herm_eig(f* f), independent of the SVD path
        const auto eig = herm_eig((adjoint(f) * f).matrix());
        double lhs = 0.0;
        for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
            const double x = phi(std::sqrt(std::max(0.0, eig.values(k))));
            if (std::isinf(x)) {
                lhs = kInf;
                break;
            }
            lhs += x * trace.index_mass(eig.values.size(), k);
        }
        const SingularProfile prof = singular_profile(f, trace);
        double rhs = 0.0;
        for (std::size_t k = 0; k < prof.steps(); ++k) {
            const double x = phi(prof.values[k]);
            if (std::isinf(x)) {
                rhs = kInf;
                break;
            }
            rhs += x * prof.weights[k];
        }
        if (std::isinf(lhs) || std::isinf(rhs)) {
            ++infinite_cases;
            if (std::isinf(lhs) != std::isinf(rhs)) chk.record(1.0, 0.0);
            if (!std::isinf(trace_phi(f, phi, trace))) chk.record(1.0, 0.0);
            continue;
        }
        chk.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-10);
        chk.record(std::abs(trace_phi(f, phi, trace) - rhs) / std::max(1.0, std::abs(rhs)), 1e-10);
    }
    r.pass = chk.pass && infinite_cases > 0;
    r.detail = "max relative gap " + fmt(chk.worst) + " over 300 pairs, " +
               std::to_string(infinite_cases) + " infinite-value cases";
    return r;
}

CriterionResult c10_luxemburg_anchors() {
    CriterionResult r{10, "Luxemburg norm anchors and Kunze = DDdP", false, "", 0};
    const Lattice lat(1, 2);
    const Region reg = Region::chain(2);
    const TraceSpec trace = TraceSpec::normalized();
    Check power_chk, exp_chk, ddp_chk;
    const DensityOperator free_state(LocalOperator::identity(lat, reg));
    const std::vector<OrliczFunction> phis = {
        OrliczFunction::power(1.0),  OrliczFunction::power(2.0),
        OrliczFunction::power(3.0),  OrliczFunction::exp_minus_one(),
        OrliczFunction::cosh_minus_one(), OrliczFunction::llogl(),
        OrliczFunction::custom({{0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}}, true),
    };
    const double ps[4] = {1.0, 1.5, 2.0, 3.0};
    for (int i = 0; i < 200; ++i) {
        const LocalOperator f = (i % 2 == 0) ? random_hermitian(lat, reg, 112000 + i)
                                             : random_operator(lat, reg, 112000 + i);
        const double p = ps[i % 4];
        power_chk.record(std::abs(luxemburg_norm(f, OrliczFunction::power(p), trace) -
                                  lps_norm(f, free_state, p, 0.25)),
                         1e-10);
        const OrliczFunction& phi = phis[i % phis.size()];
        const double kunze = luxemburg_norm(f, phi, trace);
        ddp_chk.record(std::abs(ddp_norm(f, phi, trace) - kunze) / std::max(1.0, kunze), 1e-12);
    }
    for (long size = 1; size <= 2; ++size) {
        const LocalOperator one = LocalOperator::identity(lat, Region::chain(size));
        exp_chk.record(std::abs(luxemburg_norm(one, OrliczFunction::exp_minus_one(), trace) -
                                1.0 / std::log(2.0)),
                       1e-10);
    }
    r.pass = power_chk.pass && exp_chk.pass && ddp_chk.pass;
    r.detail = "power anchor " + fmt(power_chk.worst) + ", 1/ln2 anchor " + fmt(exp_chk.worst) +
               ", Kunze-DDdP gap " + fmt(ddp_chk.worst);
    return r;
}

CriterionResult c11_contraction_suite() {
    CriterionResult r{11, "Orlicz contraction classes (isometries, Kraus bound)", false, "", 0};
    const Lattice lat(1, 2);
    const Region reg = Region::chain(2);
    const TraceSpec trace = TraceSpec::normalized();
    const std::vector<OrliczFunction> phis = {OrliczFunction::power(2.0),
                                              OrliczFunction::exp_minus_one(),
                                              OrliczFunction::llogl()};
    bool pass = true;
    double worst_iso = 0.0, worst_kraus = 0.0, worst_step = 0.0;
    int samples = 0;
    for (std::size_t k = 0; k < phis.size(); ++k) {
        const std::uint64_t seed = 113000 + 100 * k;
        // inner automorphism from a random Hamiltonian
        const auto h = herm_eig(random_hermitian(lat, reg, seed).matrix());
        Eigen::VectorXcd phase(h.values.size());
        for (Eigen::Index i = 0; i < phase.size(); ++i)
            phase(i) = std::exp(Complex(0.0, h.values(i)));
        const LocalOperator u(lat, reg, h.vectors * phase.asDiagonal() * h.vectors.adjoint());
        const auto inner = contraction_report(Superoperator::inner_automorphism(u), phis[k],
                                              trace, 170, seed + 1);
        const auto trans = contraction_report(Superoperator::transpose_map(lat, reg), phis[k],
                                              trace, 170, seed + 2);
        const auto kraus = contraction_report(
            Superoperator::kraus({random_operator(lat, reg, seed + 3),
                                  random_operator(lat, reg, seed + 4)}),
            phis[k], trace, 170, seed + 5);
        samples += inner.samples + trans.samples + kraus.samples;
        pass = pass && inner.pass && trans.pass && kraus.pass;
        worst_iso = std::max({worst_iso, std::abs(inner.max_ratio - 1.0),
                              std::abs(inner.min_ratio - 1.0), std::abs(trans.max_ratio - 1.0),
                              std::abs(trans.min_ratio - 1.0)});
        worst_kraus = std::max(worst_kraus, kraus.max_ratio - kraus.certified_bound);
        worst_step = std::max({worst_step, inner.stepwise_excess, trans.stepwise_excess,
                               kraus.stepwise_excess});
    }
    r.pass = pass;
    r.detail = "isometry dev " + fmt(worst_iso) + ", Kraus bound excess " + fmt(worst_kraus) +
               ", stepwise " + fmt(worst_step) + " over " + std::to_string(samples) + " samples";
    return r;
}

CriterionResult c12_commutative_oracle() {
    CriterionResult r{12, "commutative oracle on the diagonal subalgebra", false, "", 0};
    const Lattice lat(1, 2);
    const TraceSpec trace = TraceSpec::normalized();
    const std::vector<OrliczFunction> phis = {
        OrliczFunction::power(2.0), OrliczFunction::exp_minus_one(), OrliczFunction::llogl()};
    const double ps[4] = {1.0, 1.5, 2.0, 3.0};
    Check chk;
    for (int i = 0; i < 200; ++i) {
        const Region reg = Region::chain(1 + (i % 2));
        Rng rng(114000 + i);
        const DensityOperator rho = diagonal_state(lat, reg, rng);
        const LocalOperator f = diagonal_operator(lat, reg, rng);
        const Eigen::Index dim = f.dim();
        std::vector<double> fabs(static_cast<std::size_t>(dim)), rhod(static_cast<std::size_t>(dim)),
            mass(static_cast<std::size_t>(dim), 1.0 / static_cast<double>(dim));
        for (Eigen::Index k = 0; k < dim; ++k) {
            fabs[static_cast<std::size_t>(k)] = std::abs(f.matrix()(k, k));
            rhod[static_cast<std::size_t>(k)] = rho.op().matrix()(k, k).real();
        }
        const double p = ps[i % 4], s = 0.25 * (i % 5);
        double acc = 0.0;
        for (Eigen::Index k = 0; k < dim; ++k)
            acc += rhod[static_cast<std::size_t>(k)] *
                   std::pow(fabs[static_cast<std::size_t>(k)], p) / static_cast<double>(dim);
        chk.record(std::abs(lps_norm(f, rho, p, s) - std::pow(acc, 1.0 / p)), 1e-12);

        Complex inner(0.0, 0.0);
        for (Eigen::Index k = 0; k < dim; ++k)
            inner += rhod[static_cast<std::size_t>(k)] * std::norm(f.matrix()(k, k)) /
                     static_cast<double>(dim);
        chk.record(std::abs(kms_inner(f, f, rho, 0.5) - inner), 1e-12);

        const SingularProfile prof = singular_profile(f, trace);
        const SingularProfile cls = classical_rearrangement(fabs, mass);
        if (prof.steps() != cls.steps()) chk.record(1.0, 0.0);
        else
            for (std::size_t k = 0; k < prof.steps(); ++k) {
                chk.record(std::abs(prof.values[k] - cls.values[k]), 1e-12);
                chk.record(std::abs(prof.weights[k] - cls.weights[k]), 1e-12);
            }

        const OrliczFunction& phi = phis[i % phis.size()];
        const double oracle = classical_luxemburg_oracle(fabs, mass, phi);
        const double lib = luxemburg_norm(f, phi, trace);
        chk.record(std::abs(lib - oracle) / std::max(1.0, oracle), 1e-12);
        chk.record(std::abs(ddp_norm(f, phi, trace) - oracle) / std::max(1.0, oracle), 1e-12);
    }
    r.pass = chk.pass;
    r.detail = "max deviation from the classical implementation " + fmt(chk.worst) +
               " (tol 1e-12)";
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance() {
    using Fn = CriterionResult (*)();
    const Fn criteria[] = {c1_trace_compatibility, c2_unitality,       c3_monotonicity,
                           c4_kms_consistency,     c5_holder_duality,  c6_gce_properties,
                           c7_semigroup,           c8_equivalence_constant,
                           c9_trace_integral,      c10_luxemburg_anchors,
                           c11_contraction_suite,  c12_commutative_oracle};
    std::vector<CriterionResult> out;
    for (Fn fn : criteria) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult res = fn();
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(res));
    }
    return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace qnc::selftest
