#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "qnc/cond_exp.hpp"
#include "qnc/operators.hpp"

namespace qnc {

/// Convex phi : [0,inf) -> [0,inf], phi(0) = 0, non-decreasing, neither
/// identically zero nor infinite on (0,inf), left-continuous at
/// b_phi = sup{u : phi(u) < inf}. Evaluation returns +inf beyond b_phi.
class OrliczFunction {
  public:
    enum class Kind { power, exp_minus_one, cosh_minus_one, llogl, custom };

    static OrliczFunction power(double p);          // u^p, p >= 1
    static OrliczFunction exp_minus_one();          // e^u - 1
    static OrliczFunction cosh_minus_one();         // cosh(u) - 1
    static OrliczFunction llogl();                  // u log(1+u)
    /// Piecewise-linear on the knot grid [(0,0), ..., (u_K, v_K)]; convexity
    /// validated via non-decreasing difference quotients. With
    /// infinite_beyond the function jumps to +inf past u_K (b_phi = u_K),
    /// otherwise it continues with the final slope (b_phi = inf).
    static OrliczFunction custom(std::vector<std::array<double, 2>> knots,
                                 bool infinite_beyond = true);

    double operator()(double u) const;
    double a_phi() const { return a_; }  // largest u with phi(u) = 0
    double b_phi() const { return b_; }  // may be +inf
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }

  private:
    OrliczFunction(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}
    Kind kind_;
    std::string name_;
    double p_ = 1.0;
    std::vector<std::array<double, 2>> knots_;
    bool infinite_beyond_ = true;
    double a_ = 0.0;
    double b_ = std::numeric_limits<double>::infinity();
};

/// Right-continuous decreasing step function t -> mu_t(f) on (0, total_mass):
/// strictly decreasing positive values with their trace masses; the implicit
/// zero tail fills the domain up to total_mass.
struct SingularProfile {
    std::vector<double> values;
    std::vector<double> weights;
    double total_mass = 0.0;

    std::size_t steps() const { return values.size(); }
    double max_value() const { return values.empty() ? 0.0 : values.front(); }
    double value_at(double t) const;
    std::vector<double> cumulative() const;
    SingularProfile truncated(std::size_t n) const;  // first n steps, same domain
    SingularProfile scaled(double c) const;          // c >= 0
};

/// Sorts |values| decreasing, merges equal steps (1e-12 relative), drops
/// zeros; preserves the total mass.
SingularProfile classical_rearrangement(const std::vector<double>& values,
                                        const std::vector<double>& weights);

/// Generalized singular values mu_t(f) with step weights given by the trace
/// mass of each spectral index. Weighted traces accept diagonal operators
/// only (they are not unitarily invariant).
SingularProfile singular_profile(const LocalOperator& f, const TraceSpec& trace);

/// Pointwise sum of two decreasing step functions.
SingularProfile profile_add(const SingularProfile& a, const SingularProfile& b);

/// max over t of (a(t) - c * b(t)); <= 0 means a <= c b pointwise.
double profile_excess(const SingularProfile& a, double c, const SingularProfile& b);

/// tau(phi(|f|)), computed both by spectral calculus and as
/// sum_k phi(mu_k) w_k from the profile; the two routes must agree to 1e-10
/// relative (the trace-integral identity), else this throws. May return +inf.
double trace_phi(const LocalOperator& f, const OrliczFunction& phi, const TraceSpec& trace);

/// Luxemburg-Nakano gauge of a commutative step function:
/// inf{lambda > 0 : sum_k phi(v_k/lambda) w_k <= 1}, by bracketed bisection.
double luxemburg_norm(const SingularProfile& profile, const OrliczFunction& phi);

/// Kunze gauge inf{lambda : tau(phi(|f|/lambda)) <= 1} via the raw spectrum.
double luxemburg_norm(const LocalOperator& f, const OrliczFunction& phi, const TraceSpec& trace);

/// Dodds-Dodds-de Pagter norm rho_phi(mu(f)); coincides with the Kunze gauge
/// by the trace-integral identity.
double ddp_norm(const LocalOperator& f, const OrliczFunction& phi, const TraceSpec& trace);

/// A lambda > 0 with tau(phi(lambda |f|)) < inf; at finite dimension any
/// lambda < b_phi / mu_0(f) works, so membership in the Kunze space is
/// automatic and this simply returns a safe witness.
double kunze_membership(const LocalOperator& f, const OrliczFunction& phi, const TraceSpec& trace);

struct AxiomReport {
    bool zero_iff_zero = true;
    double homogeneity_dev = 0.0;
    double triangle_excess = 0.0;
    double monotonicity_excess = 0.0;
    double fatou_gap = 0.0;
    int samples = 0;
    bool pass = false;
};

/// Banach-function-norm axioms plus the Fatou property, probed on sample
/// profiles and their truncation sequences.
AxiomReport function_norm_axiom_check(const OrliczFunction& phi,
                                      const std::vector<SingularProfile>& samples);

struct ContractionReport {
    int map_class = 0;        // 1 inner auto, 2 Kraus sum, 3 pure CP, 4 Jordan morphism
    double certified_bound = 1.0; // C
    double max_ratio = 0.0;       // max ||Tf||_phi / ||f||_phi
    double min_ratio = 0.0;
    double stepwise_excess = 0.0; // singular-value level monotonicity defect
    int samples = 0;
    bool pass = false;
};

/// Orlicz-norm contraction certificate for the four certified map classes:
/// inner automorphisms (C = 1, equality), finite Kraus sums
/// (C = sum ||W_i||^2), single-Kraus pure CP maps (C = ||V||^2), and
/// trace-compatible Jordan morphisms (C = 1, equality).
ContractionReport contraction_report(const Superoperator& t, const OrliczFunction& phi,
                                     const TraceSpec& trace, int samples, std::uint64_t seed,
                                     double slack = 1e-9);

} // namespace qnc
