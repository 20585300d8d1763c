#include "qnc/orlicz.hpp"

#include <algorithm>
#include <cmath>

namespace qnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

// ---------------------------------------------------------------------------
// OrliczFunction
// ---------------------------------------------------------------------------

OrliczFunction OrliczFunction::power(double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument("power Orlicz function needs p >= 1");
    OrliczFunction f(Kind::power, "power(" + std::to_string(p) + ")");
    f.p_ = p;
    return f;
}

OrliczFunction OrliczFunction::exp_minus_one() {
    return OrliczFunction(Kind::exp_minus_one, "exp_minus_one");
}

OrliczFunction OrliczFunction::cosh_minus_one() {
    return OrliczFunction(Kind::cosh_minus_one, "cosh_minus_one");
}

OrliczFunction OrliczFunction::llogl() { return OrliczFunction(Kind::llogl, "llogl"); }

OrliczFunction OrliczFunction::custom(std::vector<std::array<double, 2>> knots,
                                      bool infinite_beyond) {
    if (knots.size() < 2) throw std::invalid_argument("custom Orlicz function needs >= 2 knots");
    if (knots[0][0] != 0.0 || knots[0][1] != 0.0)
        throw std::invalid_argument("custom Orlicz function must start at the knot (0, 0)");
    double prev_slope = -kInf;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double du = knots[i + 1][0] - knots[i][0];
        const double dv = knots[i + 1][1] - knots[i][1];
        if (!(du > 0.0)) throw std::invalid_argument("custom knots must have strictly increasing u");
        if (!(std::isfinite(knots[i + 1][1])) || dv < 0.0)
            throw std::invalid_argument("custom knot values must be finite and non-decreasing");
        const double slope = dv / du;
        if (slope < prev_slope - 1e-12 * (1.0 + std::abs(prev_slope)))
            throw std::invalid_argument("custom knots are not convex (difference quotients decrease)");
        prev_slope = slope;
    }
    if (!infinite_beyond && !(prev_slope > 0.0))
        throw std::invalid_argument("custom Orlicz function with b = inf needs a positive final slope");

    OrliczFunction f(Kind::custom, "custom");
    f.infinite_beyond_ = infinite_beyond;
    f.b_ = infinite_beyond ? knots.back()[0] : kInf;
    f.a_ = 0.0;
    for (const auto& k : knots) {
        if (k[1] == 0.0) f.a_ = k[0];
        else break;
    }
    f.knots_ = std::move(knots);
    return f;
}

double OrliczFunction::operator()(double u) const {
    if (std::isnan(u) || u < 0.0)
        throw std::invalid_argument("Orlicz functions are evaluated on [0, inf]");
    switch (kind_) {
        case Kind::power:
            return std::pow(u, p_);
        case Kind::exp_minus_one:
            return std::expm1(u);
        case Kind::cosh_minus_one:
            return std::cosh(u) - 1.0;
        case Kind::llogl:
            return u * std::log1p(u);
        case Kind::custom: {
            if (u > b_) return kInf;
            if (u >= knots_.back()[0]) {
                const auto& a = knots_[knots_.size() - 2];
                const auto& b = knots_.back();
                const double slope = (b[1] - a[1]) / (b[0] - a[0]);
                return b[1] + slope * (u - b[0]);
            }
            auto it = std::upper_bound(knots_.begin(), knots_.end(), u,
                                       [](double x, const std::array<double, 2>& k) { return x < k[0]; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (u - lo[0]) / (hi[0] - lo[0]);
            return lo[1] + w * (hi[1] - lo[1]);
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// SingularProfile
// ---------------------------------------------------------------------------

double SingularProfile::value_at(double t) const {
    double cum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        cum += weights[k];
        if (t < cum) return values[k];
    }
    return 0.0;
}

std::vector<double> SingularProfile::cumulative() const {
    std::vector<double> cum;
    cum.reserve(values.size());
    double acc = 0.0;
    for (double w : weights) cum.push_back(acc += w);
    return cum;
}

SingularProfile SingularProfile::truncated(std::size_t n) const {
    SingularProfile out;
    n = std::min(n, values.size());
    out.values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n));
    out.weights.assign(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(n));
    out.total_mass = total_mass;
    return out;
}

SingularProfile SingularProfile::scaled(double c) const {
    if (!(c >= 0.0)) throw std::invalid_argument("profile scaling must be >= 0");
    if (c == 0.0) return SingularProfile{{}, {}, total_mass};
    SingularProfile out = *this;
    for (double& v : out.values) v *= c;
    return out;
}

SingularProfile classical_rearrangement(const std::vector<double>& values,
                                        const std::vector<double>& weights) {
    if (values.size() != weights.size())
        throw std::invalid_argument("values and weights differ in length");
    double total = 0.0;
    std::vector<std::pair<double, double>> steps;
    steps.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(weights[i] > 0.0)) throw std::invalid_argument("step weights must be positive");
        if (!std::isfinite(values[i])) throw std::invalid_argument("step values must be finite");
        total += weights[i];
        const double v = std::abs(values[i]);
        if (v > 0.0) steps.emplace_back(v, weights[i]);
    }
    std::sort(steps.begin(), steps.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    SingularProfile out;
    out.total_mass = total;
    for (const auto& [v, w] : steps) {
        if (!out.values.empty() && out.values.back() - v <= 1e-14 * out.values.back())
            out.weights.back() += w;  // merge numerically equal singular values
        else {
            out.values.push_back(v);
            out.weights.push_back(w);
        }
    }
    return out;
}

namespace {

// spectral data (value, mass) per index, unmerged; the raw material for both
// the Kunze gauge and the profile.
std::vector<std::pair<double, double>> spectral_steps(const LocalOperator& f,
                                                      const TraceSpec& trace) {
    const Eigen::Index dim = f.dim();
    std::vector<std::pair<double, double>> steps;
    steps.reserve(static_cast<std::size_t>(dim));
    if (trace.kind() == TraceSpec::Kind::weighted) {
        const Matrix& m = f.matrix();
        double offdiag = 0.0, scale = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j) {
                const double a = std::abs(m(i, j));
                scale = std::max(scale, a);
                if (i != j) offdiag = std::max(offdiag, a);
            }
        if (offdiag > 1e-12 * (1.0 + scale))
            throw std::invalid_argument(
                "weighted traces define singular values for diagonal operators only");
        for (Eigen::Index i = 0; i < dim; ++i)
            steps.emplace_back(std::abs(m(i, i)), trace.index_mass(dim, i));
        return steps;
    }
    const Eigen::VectorXd sv = singular_values(f.matrix());
    for (Eigen::Index i = 0; i < dim; ++i)
        steps.emplace_back(sv(i), trace.index_mass(dim, i));
    return steps;
}

} // namespace

SingularProfile singular_profile(const LocalOperator& f, const TraceSpec& trace) {
    const auto steps = spectral_steps(f, trace);
    std::vector<double> v, w;
    v.reserve(steps.size());
    w.reserve(steps.size());
    for (const auto& [val, mass] : steps) {
        v.push_back(val);
        w.push_back(mass);
    }
    return classical_rearrangement(v, w);
}

SingularProfile profile_add(const SingularProfile& a, const SingularProfile& b) {
    std::vector<double> breaks{0.0};
    for (double c : a.cumulative()) breaks.push_back(c);
    for (double c : b.cumulative()) breaks.push_back(c);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<double> v, w;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
        v.push_back(a.value_at(mid) + b.value_at(mid));
        w.push_back(breaks[i + 1] - breaks[i]);
    }
    SingularProfile out = classical_rearrangement(v, w);
    out.total_mass = std::max(a.total_mass, b.total_mass);
    return out;
}

double profile_excess(const SingularProfile& a, double c, const SingularProfile& b) {
    std::vector<double> breaks{0.0};
    for (double x : a.cumulative()) breaks.push_back(x);
    for (double x : b.cumulative()) breaks.push_back(x);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double excess = a.value_at(breaks.back() + 1.0) - c * b.value_at(breaks.back() + 1.0);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
        excess = std::max(excess, a.value_at(mid) - c * b.value_at(mid));
    }
    return excess;
}

// ---------------------------------------------------------------------------
// trace integrals and gauges
// ---------------------------------------------------------------------------

namespace {

double phi_sum(const std::vector<double>& values, const std::vector<double>& weights,
               const OrliczFunction& phi, double inv_lambda) {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = phi(values[i] * inv_lambda);
        if (std::isinf(x)) return kInf;
        acc += x * weights[i];
    }
    return acc;
}

struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double luxemburg_gauge(const std::vector<double>& values, const std::vector<double>& weights,
                       const OrliczFunction& phi) {
    double maxv = 0.0;
    for (double v : values) maxv = std::max(maxv, v);
    if (maxv == 0.0) return 0.0;
    double total_weight = 0.0;
    for (double w : weights) total_weight += w;

    const auto constraint = [&](double lambda) {
        return phi_sum(values, weights, phi, 1.0 / lambda);
    };
    const auto feasible = [&](double lambda) { return constraint(lambda) <= 1.0; };

    double lo, hi = kInf;
    if (std::isfinite(phi.b_phi())) {
        lo = maxv / phi.b_phi();
        // below lo the constraint is identically +inf, so a feasible lo is the infimum
        if (feasible(lo)) return lo;
    } else {
        lo = maxv;
        if (feasible(lo)) {
            hi = lo;
            lo *= 0.25;
            int guard = 0;
            while (feasible(lo)) {
                hi = lo;
                lo *= 0.25;
                if (++guard > 600)
                    throw BracketError("luxemburg gauge: no infeasible lower bracket found");
            }
        }
    }
    if (std::isinf(hi)) {
        hi = std::max(4.0 * lo, maxv * std::max(1.0, total_weight));
        int guard = 0;
        while (!feasible(hi)) {
            lo = hi;
            hi *= 4.0;
            if (++guard > 600)
                throw BracketError("luxemburg gauge: no feasible upper bracket found");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (feasible(mid) ? hi : lo) = mid;
    }
    return hi;  // the smallest proven-feasible lambda
}

} // namespace

double trace_phi(const LocalOperator& f, const OrliczFunction& phi, const TraceSpec& trace) {
    const auto steps = spectral_steps(f, trace);
    double spectral = 0.0;
    for (const auto& [v, m] : steps) {
        const double x = phi(v);
        if (std::isinf(x)) {
            spectral = kInf;
            break;
        }
        spectral += x * m;
    }
    const SingularProfile prof = singular_profile(f, trace);
    double integral = 0.0;
    for (std::size_t k = 0; k < prof.steps(); ++k) {
        const double x = phi(prof.values[k]);
        if (std::isinf(x)) {
            integral = kInf;
            break;
        }
        integral += x * prof.weights[k];
    }
    if (std::isinf(spectral) && std::isinf(integral)) return integral;
    if (std::isinf(spectral) != std::isinf(integral) ||
        std::abs(spectral - integral) > 1e-10 * std::max(1.0, std::abs(spectral)))
        throw std::runtime_error("trace-integral identity violated: tau(phi(|f|)) = " +
                                 std::to_string(spectral) + " vs profile sum " +
                                 std::to_string(integral));
    return integral;
}

double luxemburg_norm(const SingularProfile& profile, const OrliczFunction& phi) {
    return luxemburg_gauge(profile.values, profile.weights, phi);
}

double luxemburg_norm(const LocalOperator& f, const OrliczFunction& phi, const TraceSpec& trace) {
    const auto steps = spectral_steps(f, trace);
    std::vector<double> v, w;
    v.reserve(steps.size());
    w.reserve(steps.size());
    for (const auto& [val, mass] : steps) {
        if (val > 0.0) {
            v.push_back(val);
            w.push_back(mass);
        }
    }
    return luxemburg_gauge(v, w, phi);
}

double ddp_norm(const LocalOperator& f, const OrliczFunction& phi, const TraceSpec& trace) {
    return luxemburg_norm(singular_profile(f, trace), phi);
}

double kunze_membership(const LocalOperator& f, const OrliczFunction& phi,
                        const TraceSpec& trace) {
    const auto steps = spectral_steps(f, trace);
    double maxv = 0.0;
    for (const auto& [v, m] : steps) maxv = std::max(maxv, v);
    if (!std::isfinite(phi.b_phi()) || maxv == 0.0) return 1.0;
    return 0.5 * phi.b_phi() / maxv;
}

AxiomReport function_norm_axiom_check(const OrliczFunction& phi,
                                      const std::vector<SingularProfile>& samples) {
    AxiomReport rep;
    rep.samples = static_cast<int>(samples.size());
    if (luxemburg_norm(SingularProfile{}, phi) != 0.0) rep.zero_iff_zero = false;

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SingularProfile& f = samples[i];
        const double nf = luxemburg_norm(f, phi);
        if (f.steps() > 0 && !(nf > 0.0)) rep.zero_iff_zero = false;
        if (!(nf > 0.0)) continue;

        for (double c : {2.0, 0.5}) {
            const double scaled = luxemburg_norm(f.scaled(c), phi);
            rep.homogeneity_dev =
                std::max(rep.homogeneity_dev, std::abs(scaled - c * nf) / (c * nf));
        }

        const SingularProfile& g = samples[(i + 1) % samples.size()];
        const double ng = luxemburg_norm(g, phi);
        const SingularProfile sum = profile_add(f, g);
        const double nsum = luxemburg_norm(sum, phi);
        rep.triangle_excess =
            std::max(rep.triangle_excess, (nsum - (nf + ng)) / std::max(1.0, nf + ng));
        // f <= f + g pointwise, so the norm must not decrease
        rep.monotonicity_excess =
            std::max(rep.monotonicity_excess, (nf - nsum) / std::max(1.0, nsum));
        rep.monotonicity_excess = std::max(
            rep.monotonicity_excess, (nf - luxemburg_norm(f.scaled(1.5), phi)) / std::max(1.0, nf));

        // Fatou on the truncation sequence f_n -> f
        double prev = 0.0;
        for (std::size_t n = 1; n <= f.steps(); ++n) {
            const double fn = luxemburg_norm(f.truncated(n), phi);
            rep.monotonicity_excess =
                std::max(rep.monotonicity_excess, (prev - fn) / std::max(1.0, fn));
            prev = fn;
        }
        rep.fatou_gap = std::max(rep.fatou_gap, std::abs(nf - prev) / std::max(1.0, nf));
    }
    rep.pass = rep.zero_iff_zero && rep.homogeneity_dev <= 1e-12 &&
               rep.triangle_excess <= 1e-10 && rep.monotonicity_excess <= 1e-10 &&
               rep.fatou_gap <= 1e-8;
    return rep;
}

ContractionReport contraction_report(const Superoperator& t, const OrliczFunction& phi,
                                     const TraceSpec& trace, int samples, std::uint64_t seed,
                                     double slack) {
    if (trace.kind() == TraceSpec::Kind::weighted)
        throw std::invalid_argument("contraction_report needs a unitarily invariant trace");
    ContractionReport rep;
    rep.samples = samples;
    std::vector<double> kraus_bounds;
    switch (t.kind()) {
        case Superoperator::Kind::inner_auto:
            rep.map_class = 1;
            rep.certified_bound = 1.0;
            break;
        case Superoperator::Kind::kraus: {
            rep.map_class = t.kraus_ops().size() == 1 ? 3 : 2;
            double c = 0.0;
            for (const auto& w : t.kraus_ops()) {
                const double b = operator_norm(w);
                kraus_bounds.push_back(b * b);
                c += b * b;
            }
            rep.certified_bound = c;
            break;
        }
        case Superoperator::Kind::transpose:
        case Superoperator::Kind::jordan:
            rep.map_class = 4;
            rep.certified_bound = 1.0;
            break;
        default:
            throw std::invalid_argument(
                "contraction_report covers inner automorphisms, Kraus maps, and Jordan morphisms");
    }

    rep.min_ratio = kInf;
    for (int i = 0; i < samples; ++i) {
        const LocalOperator f = random_hermitian(t.lattice(), t.ambient(), seed + 7919u * i);
        const double nf = luxemburg_norm(f, phi, trace);
        if (!(nf > 0.0)) continue;
        const double nt = luxemburg_norm(t.apply(f), phi, trace);
        rep.max_ratio = std::max(rep.max_ratio, nt / nf);
        rep.min_ratio = std::min(rep.min_ratio, nt / nf);

        const SingularProfile pf = singular_profile(f, trace);
        if (rep.map_class == 2 || rep.map_class == 3) {
            for (std::size_t k = 0; k < t.kraus_ops().size(); ++k) {
                const auto& w = t.kraus_ops()[k];
                const SingularProfile pw = singular_profile(adjoint(w) * f * w, trace);
                const double denom = 1.0 + kraus_bounds[k] * pf.max_value();
                rep.stepwise_excess =
                    std::max(rep.stepwise_excess, profile_excess(pw, kraus_bounds[k], pf) / denom);
            }
        } else {
            const SingularProfile pt = singular_profile(t.apply(f), trace);
            const double denom = 1.0 + pf.max_value();
            rep.stepwise_excess =
                std::max(rep.stepwise_excess, std::max(profile_excess(pt, 1.0, pf),
                                                       profile_excess(pf, 1.0, pt)) /
                                                  denom);
        }
    }
    if (std::isinf(rep.min_ratio)) rep.min_ratio = 0.0;

    if (rep.map_class == 1 || rep.map_class == 4)
        rep.pass = std::abs(rep.max_ratio - 1.0) <= slack && std::abs(rep.min_ratio - 1.0) <= slack &&
                   rep.stepwise_excess <= slack;
    else
        rep.pass = rep.max_ratio <= rep.certified_bound + slack && rep.stepwise_excess <= slack;
    return rep;
}

} // namespace qnc
