#pragma once

#include "qnc/operators.hpp"

namespace qnc {

struct PotentialTerm {
    Region shape;   // anchored at the coordinate-wise origin when covariant
    Matrix matrix;  // self-adjoint, dimension n^|shape|
};

/// Interaction potential Phi = {Phi_X}: a finite list of term templates with
/// finite range. Translation-covariant potentials place every translate of
/// each template; otherwise the shapes are absolute regions.
class Potential {
  public:
    Potential(Lattice lattice, std::vector<PotentialTerm> terms, int range,
              bool translation_covariant);

    const Lattice& lattice() const { return lattice_; }
    const std::vector<PotentialTerm>& terms() const { return terms_; }
    int range() const { return range_; }
    bool translation_covariant() const { return covariant_; }

    struct Instance {
        Region region;
        const PotentialTerm* term;
    };
    /// Every term placement X with X inside the volume (the X subset Lambda sum).
    std::vector<Instance> instances_in(const Region& volume) const;

  private:
    Lattice lattice_;
    std::vector<PotentialTerm> terms_;
    int range_;
    bool covariant_;
};

/// Nearest-neighbour bond -(Jx XX + Jy YY + Jz ZZ) per axis plus field -h Z.
Potential heisenberg_potential(const Lattice& lattice, double jx, double jy, double jz, double h);
/// Ising: the Jx = Jy = 0 Heisenberg special case, bond -J ZZ.
Potential ising_potential(const Lattice& lattice, double j, double h);
Potential zero_potential(const Lattice& lattice);

/// sup_i sum_{X ni i} ||Phi_X||_op.
double potential_norm1(const Potential& phi);
/// sup_i sum_{X ni i} e^{lambda |X|} ||Phi_X||_op, lambda > 0.
double potential_norm_exp(const Potential& phi, double lambda);

/// H_Lambda = sum over X inside Lambda of Phi_X, free boundary conditions.
LocalOperator hamiltonian(const Potential& phi, const Region& volume);

/// rho_Lambda = e^{-beta H} normalized to unit normalized trace, via spectral
/// decomposition with a max-eigenvalue shift.
DensityOperator gibbs_density(const Potential& phi, const Region& volume, double beta);

/// omega_Lambda(f) = Tr(rho f) (normalized trace).
Complex gibbs_expectation(const DensityOperator& rho, const LocalOperator& f);

/// alpha_t(f) = e^{+itH} f e^{-itH}.
LocalOperator heisenberg_evolve(const LocalOperator& f, const LocalOperator& h, double t);

/// Operator-norm distance || Tr_{L2\L1}(rho_{L2}) - rho_{L1} (x) 1 ||: a
/// measurement of the quasi-local compatibility condition, exact only for
/// non-interacting potentials.
double compatibility_defect(const Potential& phi, double beta, const Region& lambda1,
                            const Region& lambda2);

} // namespace qnc
