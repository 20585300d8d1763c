#include "qnc/gibbs.hpp"

#include <cmath>

namespace qnc {

namespace {

Region anchored(const Region& shape) {
    if (shape.empty()) return shape;
    Site lo = shape.sites()[0];
    for (const auto& s : shape.sites())
        for (std::size_t k = 0; k < lo.size(); ++k) lo[k] = std::min(lo[k], s[k]);
    for (auto& c : lo) c = -c;
    return shape.translated(lo);
}

} // namespace

Potential::Potential(Lattice lattice, std::vector<PotentialTerm> terms, int range,
                     bool translation_covariant)
    : lattice_(lattice), terms_(std::move(terms)), range_(range), covariant_(translation_covariant) {
    if (range_ < 0) throw std::invalid_argument("potential range must be >= 0");
    for (auto& t : terms_) {
        if (t.shape.empty()) throw std::invalid_argument("potential term on the empty region");
        const Eigen::Index dim = hilbert_dim(lattice_, t.shape);
        if (t.matrix.rows() != dim || t.matrix.cols() != dim)
            throw std::invalid_argument("potential term matrix dimension mismatch on " +
                                        t.shape.to_string());
        const double scale = 1e-12 * (1.0 + operator_norm(t.matrix));
        if ((t.matrix - t.matrix.adjoint()).cwiseAbs().maxCoeff() > scale)
            throw std::invalid_argument("potential term on " + t.shape.to_string() +
                                        " is not self-adjoint");
        if (t.shape.diameter() > range_)
            throw std::invalid_argument("potential term diameter exceeds the declared range");
        if (covariant_) t.shape = anchored(t.shape);
    }
}

std::vector<Potential::Instance> Potential::instances_in(const Region& volume) const {
    std::vector<Instance> out;
    if (volume.empty()) return out;
    if (!covariant_) {
        for (const auto& t : terms_)
            if (volume.contains(t.shape)) out.push_back({t.shape, &t});
        return out;
    }
    const std::size_t d = static_cast<std::size_t>(lattice_.dimension);
    Site lo = volume.sites()[0], hi = volume.sites()[0];
    for (const auto& s : volume.sites())
        for (std::size_t k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], s[k]);
            hi[k] = std::max(hi[k], s[k]);
        }
    for (const auto& t : terms_) {
        Site ext(d, 0);
        for (const auto& s : t.shape.sites())
            for (std::size_t k = 0; k < d; ++k) ext[k] = std::max(ext[k], s[k]);
        // shift ranges over the volume bounding box shrunk by the template extent
        Site v = lo;
        bool more = true;
        while (more) {
            bool fits = true;
            for (std::size_t k = 0; k < d; ++k)
                if (v[k] + ext[k] > hi[k]) { fits = false; break; }
            if (fits) {
                Region placed = t.shape.translated(v);
                if (volume.contains(placed)) out.push_back({std::move(placed), &t});
            }
            std::size_t k = d;
            more = false;
            while (k-- > 0) {
                if (v[k] < hi[k]) {
                    ++v[k];
                    for (std::size_t j = k + 1; j < d; ++j) v[j] = lo[j];
                    more = true;
                    break;
                }
                v[k] = lo[k];
            }
        }
    }
    return out;
}

Potential heisenberg_potential(const Lattice& lattice, double jx, double jy, double jz, double h) {
    if (lattice.site_dim != 2)
        throw std::invalid_argument("spin models need single-site dimension 2");
    std::vector<PotentialTerm> terms;
    const Matrix sx = pauli('x'), sy = pauli('y'), sz = pauli('z');
    for (int axis = 0; axis < lattice.dimension; ++axis) {
        Site origin(lattice.dimension, 0), step(lattice.dimension, 0);
        step[static_cast<std::size_t>(axis)] = 1;
        Region bond({origin, step});
        Matrix m = -(jx * kron(sx, sx) + jy * kron(sy, sy) + jz * kron(sz, sz));
        terms.push_back({std::move(bond), std::move(m)});
    }
    terms.push_back({Region::single(Site(lattice.dimension, 0)), -h * sz});
    return Potential(lattice, std::move(terms), 1, true);
}

Potential ising_potential(const Lattice& lattice, double j, double h) {
    return heisenberg_potential(lattice, 0.0, 0.0, j, h);
}

Potential zero_potential(const Lattice& lattice) {
    return Potential(lattice, {}, 0, true);
}

namespace {

// sup_i sum_{X ni i} weight(X) ||Phi_X||. For a translation-covariant
// potential the sum at any site collects |shape| translates per template.
double site_sum_norm(const Potential& phi, double lambda) {
    if (phi.translation_covariant()) {
        double total = 0.0;
        for (const auto& t : phi.terms())
            total += static_cast<double>(t.shape.size()) *
                     std::exp(lambda * static_cast<double>(t.shape.size())) *
                     operator_norm(t.matrix);
        return total;
    }
    double best = 0.0;
    Region all;
    for (const auto& t : phi.terms()) all = all.unite(t.shape);
    for (const auto& site : all.sites()) {
        double total = 0.0;
        for (const auto& t : phi.terms())
            if (t.shape.contains(site))
                total += std::exp(lambda * static_cast<double>(t.shape.size())) *
                         operator_norm(t.matrix);
        best = std::max(best, total);
    }
    return best;
}

} // namespace

double potential_norm1(const Potential& phi) { return site_sum_norm(phi, 0.0); }

double potential_norm_exp(const Potential& phi, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("potential_norm_exp needs lambda > 0");
    return site_sum_norm(phi, lambda);
}

LocalOperator hamiltonian(const Potential& phi, const Region& volume) {
    LocalOperator h = LocalOperator::zero(phi.lattice(), volume);
    for (const auto& inst : phi.instances_in(volume)) {
        LocalOperator term(phi.lattice(), inst.region, inst.term->matrix);
        h = h + embed(term, volume);
    }
    return h;
}

DensityOperator gibbs_density(const Potential& phi, const Region& volume, double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("inverse temperature must be >= 0");
    const LocalOperator h = hamiltonian(phi, volume);
    auto eig = herm_eig(h.matrix());
    const double emin = eig.values.minCoeff();
    Eigen::VectorXd w(eig.values.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::exp(-beta * (eig.values(i) - emin));
    const double z = w.sum() / static_cast<double>(w.size());
    if (!(z > 0.0) || !(w.minCoeff() / z > 0.0))
        throw std::domain_error("Gibbs weights underflow: beta times the spectral width is too large");
    w /= z;
    Matrix m = eig.vectors * w.asDiagonal() * eig.vectors.adjoint();
    m = 0.5 * (m + m.adjoint());
    return DensityOperator(LocalOperator(phi.lattice(), volume, std::move(m)), eig.vectors, w);
}

Complex gibbs_expectation(const DensityOperator& rho, const LocalOperator& f) {
    return normalized_trace(rho.op() * embed(f, rho.support()));
}

LocalOperator heisenberg_evolve(const LocalOperator& f, const LocalOperator& h, double t) {
    const Region ambient = f.support().unite(h.support());
    const LocalOperator fe = embed(f, ambient);
    if (t == 0.0) return fe;
    const LocalOperator he = embed(h, ambient);
    auto eig = herm_eig(he.matrix());
    Eigen::VectorXcd phase(eig.values.size());
    for (Eigen::Index i = 0; i < phase.size(); ++i)
        phase(i) = std::exp(Complex(0.0, t * eig.values(i)));
    const Matrix u = eig.vectors * phase.asDiagonal() * eig.vectors.adjoint();
    return LocalOperator(f.lattice(), ambient, u * fe.matrix() * u.adjoint());
}

double compatibility_defect(const Potential& phi, double beta, const Region& lambda1,
                            const Region& lambda2) {
    if (!lambda2.contains(lambda1))
        throw std::invalid_argument("compatibility_defect needs lambda1 inside lambda2");
    const DensityOperator rho2 = gibbs_density(phi, lambda2, beta);
    const DensityOperator rho1 = gibbs_density(phi, lambda1, beta);
    const LocalOperator marginal = partial_trace(rho2.op(), lambda2.difference(lambda1));
    return operator_norm(marginal - embed(rho1.op(), lambda2));
}

} // namespace qnc
