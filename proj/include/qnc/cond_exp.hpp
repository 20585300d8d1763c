#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "qnc/operators.hpp"

namespace qnc {

/// Radon-Nikodym cocycle V_t = rho1^{it} rho2^{-it}.
LocalOperator rn_cocycle(const DensityOperator& rho1, const DensityOperator& rho2, double t);

/// Analytic extension xi = V_{-i/2} = rho1^{1/2} rho2^{-1/2}.
LocalOperator cocycle_analytic_extension(const DensityOperator& rho1, const DensityOperator& rho2);

/// Smallest c with (1/c) phi1(f) <= phi2(f) <= c phi1(f) for all f >= 0:
/// c = max(lambda_max(A), 1/lambda_min(A)), A = rho1^{-1/2} rho2 rho1^{-1/2}.
double equivalence_constant(const DensityOperator& rho1, const DensityOperator& rho2);

/// sigma_t(f) = rho^{it} f rho^{-it}.
LocalOperator modular_automorphism(const DensityOperator& rho, const LocalOperator& f, double t);

/// Linear maps on a local algebra, dispatched by kind. Values are immutable
/// after construction.
class Superoperator {
  public:
    enum class Kind {
        partial_trace_ce,
        generalized_ce,
        kraus,
        inner_auto,
        transpose,
        jordan,
        generator,
        custom,
    };

    static Superoperator partial_trace_ce(const Lattice& lattice, Region ambient, Region traced);
    /// E(f) = Tr_X(gamma* f gamma); gamma must satisfy Tr_X(gamma* gamma) = 1 to 1e-10.
    static Superoperator generalized_ce(LocalOperator gamma, Region traced);
    static Superoperator kraus(std::vector<LocalOperator> ops);
    static Superoperator inner_automorphism(LocalOperator unitary);
    static Superoperator transpose_map(const Lattice& lattice, Region ambient);
    /// Jordan *-morphism model: optional transpose followed by u* (.) u.
    static Superoperator jordan(LocalOperator unitary, bool transpose_first);
    static Superoperator generator(Superoperator e);  // L = E - id
    static Superoperator custom(const Lattice& lattice, Region ambient,
                                std::function<Matrix(const Matrix&)> fn);
    static Superoperator identity_map(const Lattice& lattice, Region ambient);

    Kind kind() const { return kind_; }
    const Lattice& lattice() const { return lattice_; }
    const Region& ambient() const { return ambient_; }
    const Region& traced() const;
    const LocalOperator& gamma() const;
    const std::vector<LocalOperator>& kraus_ops() const { return kraus_; }
    const Superoperator& wrapped() const;

    LocalOperator apply(const LocalOperator& f) const;

  private:
    Superoperator(Kind kind, Lattice lattice, Region ambient)
        : kind_(kind), lattice_(lattice), ambient_(std::move(ambient)) {}

    Kind kind_;
    Lattice lattice_;
    Region ambient_;
    Region traced_;
    std::optional<LocalOperator> gamma_;
    std::vector<LocalOperator> kraus_;
    std::optional<LocalOperator> unitary_;
    bool jordan_transpose_ = false;
    std::shared_ptr<const Superoperator> wrapped_;
    std::function<Matrix(const Matrix&)> custom_;
};

LocalOperator apply(const Superoperator& e, const LocalOperator& f);

/// Block-spin generalized conditional expectation for (rho_Lambda, X):
/// gamma = rho^{1/2} (Tr_X rho)^{-1/2}, E(f) = Tr_X(gamma* f gamma).
Superoperator block_spin_gce(const DensityOperator& rho, const Region& x);

struct GceReport {
    double unitality_violation = 0.0;  // ||E(1) - 1||_op
    double positivity_violation = 0.0; // max over samples of -min eig of E(f*f)
    double symmetry_violation = 0.0;   // max |<Ef,g>_1 - <f,Eg>_1|
    int samples = 0;
};

/// Checks the three generalized-conditional-expectation properties with
/// <f,g>_1 = kms_inner(f, g, rho1, 1/2).
GceReport gce_property_report(const Superoperator& e, const DensityOperator& rho1, int samples,
                              std::uint64_t seed);

/// L = E - id for unital positive E; L(1) = 0.
Superoperator markov_generator(Superoperator e);

/// Average of block maps: L_tot = sum_X (E_X - id) = m((1/m) sum E_X - id),
/// returned as a generator so semigroup_apply(L, f, m t) gives e^{t L_tot} f.
Superoperator average_map(std::vector<Superoperator> blocks);

/// P_t f = e^{-t} sum_k (t^k/k!) E^k f, truncated when the term norm drops
/// below 1e-14 ||f||; the dense superoperator is never materialized.
LocalOperator semigroup_apply(const Superoperator& generator, const LocalOperator& f, double t);

/// Column-major matricization on the N^2-dimensional operator space
/// (diagnostics; ambient dimension capped at 64).
Matrix matricize(const Superoperator& e);

/// Choi matrix C[(i,k) block] = E(e_ik); E is completely positive iff C >= 0.
Matrix choi_matrix(const Superoperator& e);

} // namespace qnc
