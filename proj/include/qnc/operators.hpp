#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qnc/lattice.hpp"

namespace qnc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Dense-matrix dimension cap: 4096 (12 spin-1/2 sites).
inline constexpr Eigen::Index kDimensionCap = 4096;

struct DimensionCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// n^|region|, with the cap enforced.
Eigen::Index hilbert_dim(const Lattice& lattice, const Region& region);

// ---------------------------------------------------------------------------
// dense helpers
// ---------------------------------------------------------------------------

struct HermEig {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;
};

/// Eigendecomposition of the Hermitian part (m + m^dagger)/2.
HermEig herm_eig(const Matrix& m);

/// Singular values, descending.
Eigen::VectorXd singular_values(const Matrix& m);

double operator_norm(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

// ---------------------------------------------------------------------------
// deterministic sampling
// ---------------------------------------------------------------------------

/// Seeded generator with a stdlib-independent Gaussian (Box-Muller on raw
/// mt19937_64 words), so identical seeds give identical matrices everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }
    double uniform();            // [0, 1)
    double gaussian();
    Complex cgaussian();         // (g1 + i g2)/sqrt(2)

  private:
    std::mt19937_64 gen_;
};

// ---------------------------------------------------------------------------
// local operators
// ---------------------------------------------------------------------------

/// An element of the local algebra A_support: a dense matrix of dimension
/// n^|support|, with tensor legs ordered by the support's canonical
/// (lexicographic) site order.
class LocalOperator {
  public:
    LocalOperator(Lattice lattice, Region support, Matrix matrix);

    static LocalOperator identity(const Lattice& lattice, const Region& support);
    static LocalOperator zero(const Lattice& lattice, const Region& support);

    const Lattice& lattice() const { return lattice_; }
    const Region& support() const { return support_; }
    const Matrix& matrix() const { return matrix_; }
    Eigen::Index dim() const { return matrix_.rows(); }

  private:
    Lattice lattice_;
    Region support_;
    Matrix matrix_;
};

/// A_X -> A_target inclusion: acts as f on the original legs and as the
/// identity on target \ support(f).
LocalOperator embed(const LocalOperator& f, const Region& target);

/// Matrix trace divided by the dimension; independent of the ambient region.
Complex normalized_trace(const LocalOperator& f);

/// Normalized partial trace over X, re-embedded into the same ambient
/// algebra (result on support\X tensored with the identity on X), so the
/// map is a unital, trace-preserving projection.
LocalOperator partial_trace(const LocalOperator& f, const Region& x);

bool is_hermitian(const LocalOperator& f, double tol = 1e-12);
bool is_positive(const LocalOperator& f, double tol = 1e-12);

LocalOperator adjoint(const LocalOperator& f);
LocalOperator transpose(const LocalOperator& f);
double operator_norm(const LocalOperator& f);

// Arithmetic embeds both operands into the union of their supports first;
// the inclusions A_X \subset A_Lambda are canonical.
LocalOperator operator+(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator-(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator*(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator*(Complex c, const LocalOperator& a);
LocalOperator operator*(double c, const LocalOperator& a);
LocalOperator operator-(const LocalOperator& a);

/// Deterministic Hermitian sample, (G + G^dagger)/2 with Gaussian G.
LocalOperator random_hermitian(const Lattice& lattice, const Region& support,
                               std::uint64_t seed);

/// Deterministic general (non-Hermitian) Gaussian sample.
LocalOperator random_operator(const Lattice& lattice, const Region& support,
                              std::uint64_t seed);

/// Pauli matrices and single-site spin operators (n = 2 only).
Matrix pauli(char axis);
LocalOperator pauli_site(const Lattice& lattice, char axis, const Site& site);

// ---------------------------------------------------------------------------
// trace specifications
// ---------------------------------------------------------------------------

/// Which trace weighs the spectral steps: the normalized trace (total mass
/// 1), the standard trace (mass 1 per index), or explicit positive weights
/// (commutative step functions / diagonal operators only).
class TraceSpec {
  public:
    enum class Kind { normalized, standard, weighted };

    static TraceSpec normalized() { return TraceSpec(Kind::normalized, {}); }
    static TraceSpec standard() { return TraceSpec(Kind::standard, {}); }
    static TraceSpec weighted(std::vector<double> weights);

    Kind kind() const { return kind_; }
    const std::vector<double>& weights() const { return weights_; }

    double index_mass(Eigen::Index dim, Eigen::Index i) const;
    double total_mass(Eigen::Index dim) const;

  private:
    TraceSpec(Kind k, std::vector<double> w) : kind_(k), weights_(std::move(w)) {}
    Kind kind_;
    std::vector<double> weights_;
};

// ---------------------------------------------------------------------------
// density operators
// ---------------------------------------------------------------------------

/// Strictly positive LocalOperator with unit normalized trace. Carries its
/// spectral decomposition so that fractional and imaginary powers reuse one
/// diagonalization.
class DensityOperator {
  public:
    explicit DensityOperator(LocalOperator op);
    /// Pre-diagonalized construction (Gibbs path); invariants still checked.
    DensityOperator(LocalOperator op, Matrix eigvecs, Eigen::VectorXd eigvals);

    const LocalOperator& op() const { return op_; }
    const Lattice& lattice() const { return op_.lattice(); }
    const Region& support() const { return op_.support(); }
    Eigen::Index dim() const { return op_.dim(); }

    const Eigen::VectorXd& eigenvalues() const { return eigvals_; }
    const Matrix& eigenvectors() const { return eigvecs_; }
    double min_eigenvalue() const { return eigvals_.minCoeff(); }

    /// rho^a for real a; eigenvalue floor guard at 1e-300.
    LocalOperator power(double a) const;
    /// rho^z, z complex (covers rho^{it} for cocycles and modular flow).
    LocalOperator complex_power(Complex z) const;

  private:
    void validate() const;
    LocalOperator op_;
    Matrix eigvecs_;
    Eigen::VectorXd eigvals_;
};

/// Deterministic strictly positive state: G G^dagger + 1e-6, normalized.
DensityOperator random_state(const Lattice& lattice, const Region& support,
                             std::uint64_t seed);

} // namespace qnc
