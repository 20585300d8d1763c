#include "qnc/cond_exp.hpp"

#include <cmath>

#include "qnc/lp_norms.hpp"

namespace qnc {

namespace {

void check_same_ambient(const DensityOperator& rho1, const DensityOperator& rho2) {
    if (!(rho1.lattice() == rho2.lattice()) || rho1.support() != rho2.support())
        throw std::invalid_argument("densities live on different ambient algebras");
}

} // namespace

LocalOperator rn_cocycle(const DensityOperator& rho1, const DensityOperator& rho2, double t) {
    check_same_ambient(rho1, rho2);
    if (t == 0.0) return LocalOperator::identity(rho1.lattice(), rho1.support());
    return rho1.complex_power(Complex(0.0, t)) * rho2.complex_power(Complex(0.0, -t));
}

LocalOperator cocycle_analytic_extension(const DensityOperator& rho1, const DensityOperator& rho2) {
    check_same_ambient(rho1, rho2);
    return rho1.power(0.5) * rho2.power(-0.5);
}

double equivalence_constant(const DensityOperator& rho1, const DensityOperator& rho2) {
    check_same_ambient(rho1, rho2);
    const LocalOperator inv_sqrt = rho1.power(-0.5);
    const Matrix a = inv_sqrt.matrix() * rho2.op().matrix() * inv_sqrt.matrix();
    const auto eig = herm_eig(a);
    const double lo = eig.values.minCoeff();
    const double hi = eig.values.maxCoeff();
    if (!(lo > 0.0)) throw std::domain_error("equivalence constant: relative density not positive");
    return std::max(hi, 1.0 / lo);
}

LocalOperator modular_automorphism(const DensityOperator& rho, const LocalOperator& f, double t) {
    const LocalOperator fe = embed(f, rho.support());
    if (t == 0.0) return fe;
    const LocalOperator u = rho.complex_power(Complex(0.0, t));
    return LocalOperator(rho.lattice(), rho.support(),
                         u.matrix() * fe.matrix() * u.matrix().adjoint());
}

// ---------------------------------------------------------------------------
// Superoperator
// ---------------------------------------------------------------------------

namespace {

void check_unitary(const LocalOperator& u) {
    const Matrix& m = u.matrix();
    const double dev = (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * (1.0 + operator_norm(m) * operator_norm(m)))
        throw std::invalid_argument("map requires a unitary (deviation " + std::to_string(dev) + ")");
}

} // namespace

Superoperator Superoperator::partial_trace_ce(const Lattice& lattice, Region ambient, Region traced) {
    if (!ambient.contains(traced))
        throw std::invalid_argument("traced region must lie inside the ambient region");
    Superoperator s(Kind::partial_trace_ce, lattice, std::move(ambient));
    s.traced_ = std::move(traced);
    return s;
}

Superoperator Superoperator::generalized_ce(LocalOperator gamma, Region traced) {
    if (!gamma.support().contains(traced))
        throw std::invalid_argument("traced region must lie inside gamma's support");
    const LocalOperator norm = partial_trace(adjoint(gamma) * gamma, traced);
    const Matrix dev = norm.matrix() - Matrix::Identity(norm.dim(), norm.dim());
    if (operator_norm(dev) > 1e-10)
        throw std::invalid_argument("generalized_ce: Tr_X(gamma* gamma) differs from 1 beyond 1e-10");
    Superoperator s(Kind::generalized_ce, gamma.lattice(), gamma.support());
    s.traced_ = std::move(traced);
    s.gamma_ = std::move(gamma);
    return s;
}

Superoperator Superoperator::kraus(std::vector<LocalOperator> ops) {
    if (ops.empty()) throw std::invalid_argument("kraus map needs at least one operator");
    Region ambient = ops[0].support();
    for (const auto& w : ops) ambient = ambient.unite(w.support());
    for (auto& w : ops) w = embed(w, ambient);
    Superoperator s(Kind::kraus, ops[0].lattice(), std::move(ambient));
    s.kraus_ = std::move(ops);
    return s;
}

Superoperator Superoperator::inner_automorphism(LocalOperator unitary) {
    check_unitary(unitary);
    Superoperator s(Kind::inner_auto, unitary.lattice(), unitary.support());
    s.unitary_ = std::move(unitary);
    return s;
}

Superoperator Superoperator::transpose_map(const Lattice& lattice, Region ambient) {
    return Superoperator(Kind::transpose, lattice, std::move(ambient));
}

Superoperator Superoperator::jordan(LocalOperator unitary, bool transpose_first) {
    check_unitary(unitary);
    Superoperator s(Kind::jordan, unitary.lattice(), unitary.support());
    s.unitary_ = std::move(unitary);
    s.jordan_transpose_ = transpose_first;
    return s;
}

Superoperator Superoperator::generator(Superoperator e) {
    if (e.kind() == Kind::generator)
        throw std::invalid_argument("nested generators are not supported");
    Superoperator s(Kind::generator, e.lattice(), e.ambient());
    s.wrapped_ = std::make_shared<const Superoperator>(std::move(e));
    return s;
}

Superoperator Superoperator::custom(const Lattice& lattice, Region ambient,
                                    std::function<Matrix(const Matrix&)> fn) {
    Superoperator s(Kind::custom, lattice, std::move(ambient));
    s.custom_ = std::move(fn);
    return s;
}

Superoperator Superoperator::identity_map(const Lattice& lattice, Region ambient) {
    return inner_automorphism(LocalOperator::identity(lattice, ambient));
}

const Region& Superoperator::traced() const {
    if (kind_ != Kind::partial_trace_ce && kind_ != Kind::generalized_ce)
        throw std::logic_error("this map kind has no traced region");
    return traced_;
}

const LocalOperator& Superoperator::gamma() const {
    if (!gamma_) throw std::logic_error("this map kind carries no gamma");
    return *gamma_;
}

const Superoperator& Superoperator::wrapped() const {
    if (!wrapped_) throw std::logic_error("this map kind wraps no other map");
    return *wrapped_;
}

LocalOperator Superoperator::apply(const LocalOperator& f) const {
    if (!(f.lattice() == lattice_))
        throw std::invalid_argument("operator lattice does not match the map's lattice");
    if (!ambient_.contains(f.support()))
        throw std::invalid_argument("operator support " + f.support().to_string() +
                                    " is not inside the map's ambient " + ambient_.to_string());
    const LocalOperator fe = embed(f, ambient_);
    switch (kind_) {
        case Kind::partial_trace_ce:
            return partial_trace(fe, traced_);
        case Kind::generalized_ce:
            return partial_trace(adjoint(*gamma_) * fe * (*gamma_), traced_);
        case Kind::kraus: {
            LocalOperator acc = LocalOperator::zero(lattice_, ambient_);
            for (const auto& w : kraus_) acc = acc + adjoint(w) * fe * w;
            return acc;
        }
        case Kind::inner_auto:
            return adjoint(*unitary_) * fe * (*unitary_);
        case Kind::transpose:
            return qnc::transpose(fe);
        case Kind::jordan: {
            const LocalOperator base = jordan_transpose_ ? qnc::transpose(fe) : fe;
            return adjoint(*unitary_) * base * (*unitary_);
        }
        case Kind::generator:
            return wrapped_->apply(fe) - fe;
        case Kind::custom:
            return LocalOperator(lattice_, ambient_, custom_(fe.matrix()));
    }
    throw std::logic_error("unreachable");
}

LocalOperator apply(const Superoperator& e, const LocalOperator& f) { return e.apply(f); }

Superoperator block_spin_gce(const DensityOperator& rho, const Region& x) {
    if (!rho.support().contains(x))
        throw std::invalid_argument("block region " + x.to_string() +
                                    " is not inside the state's support");
    const LocalOperator marginal = partial_trace(rho.op(), x);
    const auto eig = herm_eig(marginal.matrix());
    if (!(eig.values.minCoeff() > 1e-14))
        throw std::domain_error("block_spin_gce: marginal Tr_X rho is numerically singular");
    Eigen::VectorXd inv_sqrt(eig.values.size());
    for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i)
        inv_sqrt(i) = 1.0 / std::sqrt(eig.values(i));
    const Matrix msqrt = eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint();
    const LocalOperator gamma(rho.lattice(), rho.support(), rho.power(0.5).matrix() * msqrt);
    return Superoperator::generalized_ce(gamma, x);
}

GceReport gce_property_report(const Superoperator& e, const DensityOperator& rho1, int samples,
                              std::uint64_t seed) {
    if (e.kind() != Superoperator::Kind::generalized_ce &&
        e.kind() != Superoperator::Kind::partial_trace_ce)
        throw std::invalid_argument("gce_property_report expects a conditional-expectation kind");
    GceReport rep;
    rep.samples = samples;
    const LocalOperator one = LocalOperator::identity(e.lattice(), e.ambient());
    rep.unitality_violation = operator_norm(e.apply(one) - one);
    for (int i = 0; i < samples; ++i) {
        const LocalOperator f = random_hermitian(e.lattice(), e.ambient(), seed + 3 * i);
        const LocalOperator g = random_hermitian(e.lattice(), e.ambient(), seed + 3 * i + 1);
        const auto eig = herm_eig(e.apply(adjoint(f) * f).matrix());
        rep.positivity_violation = std::max(rep.positivity_violation, -eig.values.minCoeff());
        const Complex lhs = kms_inner(e.apply(f), g, rho1, 0.5);
        const Complex rhs = kms_inner(f, e.apply(g), rho1, 0.5);
        rep.symmetry_violation = std::max(rep.symmetry_violation, std::abs(lhs - rhs));
    }
    return rep;
}

Superoperator markov_generator(Superoperator e) {
    const LocalOperator one = LocalOperator::identity(e.lattice(), e.ambient());
    if (operator_norm(e.apply(one) - one) > 1e-10)
        throw std::invalid_argument("markov_generator needs a unital map");
    return Superoperator::generator(std::move(e));
}

Superoperator average_map(std::vector<Superoperator> blocks) {
    if (blocks.empty()) throw std::invalid_argument("average_map needs at least one block map");
    Region ambient = blocks[0].ambient();
    const Lattice lattice = blocks[0].lattice();
    for (const auto& b : blocks) ambient = ambient.unite(b.ambient());
    auto shared = std::make_shared<std::vector<Superoperator>>(std::move(blocks));
    auto amb_copy = ambient;
    auto fn = [shared, lattice, amb_copy](const Matrix& m) {
        const LocalOperator f(lattice, amb_copy, m);
        LocalOperator acc = LocalOperator::zero(lattice, amb_copy);
        for (const auto& b : *shared) acc = acc + embed(b.apply(f), amb_copy);
        return Matrix((1.0 / static_cast<double>(shared->size())) * acc.matrix());
    };
    return Superoperator::custom(lattice, std::move(ambient), std::move(fn));
}

LocalOperator semigroup_apply(const Superoperator& generator, const LocalOperator& f, double t) {
    if (generator.kind() != Superoperator::Kind::generator)
        throw std::invalid_argument("semigroup_apply expects a generator (markov_generator output)");
    if (!(t >= 0.0)) throw std::invalid_argument("semigroup time must be >= 0");
    const Superoperator& e = generator.wrapped();
    const LocalOperator fe = embed(f, generator.ambient());
    const double floor = 1e-14 * operator_norm(fe);
    const double damp = std::exp(-t);

    LocalOperator acc = damp * fe;
    LocalOperator power = fe;       // E^k f
    double coeff = damp;            // e^{-t} t^k / k!
    for (int k = 1; k <= 2000; ++k) {
        coeff *= t / static_cast<double>(k);
        if (coeff == 0.0) break;
        power = e.apply(power);
        const double term = coeff * operator_norm(power);
        acc = acc + coeff * power;
        if (term <= floor && k > t) break;
    }
    return acc;
}

Matrix matricize(const Superoperator& e) {
    const Eigen::Index n = hilbert_dim(e.lattice(), e.ambient());
    if (n > 64)
        throw DimensionCapError("matricization is a diagnostic for ambient dimension <= 64");
    Matrix out(n * n, n * n);
    for (Eigen::Index l = 0; l < n; ++l)
        for (Eigen::Index k = 0; k < n; ++k) {
            Matrix unit = Matrix::Zero(n, n);
            unit(k, l) = 1.0;
            const Matrix img = e.apply(LocalOperator(e.lattice(), e.ambient(), unit)).matrix();
            // column-major vec: column index k + n l
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = 0; i < n; ++i) out(i + n * j, k + n * l) = img(i, j);
        }
    return out;
}

Matrix choi_matrix(const Superoperator& e) {
    const Eigen::Index n = hilbert_dim(e.lattice(), e.ambient());
    if (n > 64)
        throw DimensionCapError("Choi matrix is a diagnostic for ambient dimension <= 64");
    Matrix out(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) {
            Matrix unit = Matrix::Zero(n, n);
            unit(i, k) = 1.0;
            out.block(i * n, k * n, n, n) =
                e.apply(LocalOperator(e.lattice(), e.ambient(), unit)).matrix();
        }
    return out;
}

} // namespace qnc
