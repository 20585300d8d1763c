#include "qnc/operators.hpp"

#include <cmath>
#include <numbers>

namespace qnc {

Eigen::Index hilbert_dim(const Lattice& lattice, const Region& region) {
    if (!region.empty() && region.spatial_dim() != lattice.dimension)
        throw std::invalid_argument("region coordinate count does not match lattice dimension");
    Eigen::Index dim = 1;
    for (std::size_t i = 0; i < region.size(); ++i) {
        dim *= lattice.site_dim;
        if (dim > kDimensionCap)
            throw DimensionCapError("operator dimension exceeds the cap of 4096 (12 spin-1/2 sites): region " +
                                    region.to_string());
    }
    return dim;
}

HermEig herm_eig(const Matrix& m) {
    Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("Hermitian eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd singular_values(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
}

double operator_norm(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    return singular_values(m)(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double Rng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    double u1 = uniform();
    if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) / std::sqrt(2.0);
}

// ---------------------------------------------------------------------------
// LocalOperator
// ---------------------------------------------------------------------------

LocalOperator::LocalOperator(Lattice lattice, Region support, Matrix matrix)
    : lattice_(lattice), support_(std::move(support)), matrix_(std::move(matrix)) {
    const Eigen::Index dim = hilbert_dim(lattice_, support_);
    if (matrix_.rows() != dim || matrix_.cols() != dim)
        throw std::invalid_argument("matrix dimension " + std::to_string(matrix_.rows()) +
                                    " does not equal n^|support| = " + std::to_string(dim));
}

LocalOperator LocalOperator::identity(const Lattice& lattice, const Region& support) {
    const Eigen::Index dim = hilbert_dim(lattice, support);
    return LocalOperator(lattice, support, Matrix::Identity(dim, dim));
}

LocalOperator LocalOperator::zero(const Lattice& lattice, const Region& support) {
    const Eigen::Index dim = hilbert_dim(lattice, support);
    return LocalOperator(lattice, support, Matrix::Zero(dim, dim));
}

namespace {

// Basis index offsets for the legs at the given positions of an L-site
// region: digit j of a local index multiplies n^(L-1-pos_j), so the first
// (lexicographically smallest) site is the most significant digit.
std::vector<Eigen::Index> leg_offsets(int n, std::size_t total_legs,
                                      const std::vector<std::size_t>& positions) {
    std::vector<Eigen::Index> strides(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j) {
        Eigen::Index s = 1;
        for (std::size_t k = positions[j] + 1; k < total_legs; ++k) s *= n;
        strides[j] = s;
    }
    Eigen::Index count = 1;
    for (std::size_t j = 0; j < positions.size(); ++j) count *= n;
    std::vector<Eigen::Index> offsets(static_cast<std::size_t>(count));
    for (Eigen::Index a = 0; a < count; ++a) {
        Eigen::Index rem = a, off = 0;
        for (std::size_t j = positions.size(); j-- > 0;) {
            off += (rem % n) * strides[j];
            rem /= n;
        }
        offsets[static_cast<std::size_t>(a)] = off;
    }
    return offsets;
}

std::vector<std::size_t> complement_positions(std::size_t total, const std::vector<std::size_t>& in) {
    std::vector<bool> taken(total, false);
    for (auto p : in) taken[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < total; ++k)
        if (!taken[k]) out.push_back(k);
    return out;
}

} // namespace

LocalOperator embed(const LocalOperator& f, const Region& target) {
    if (!target.contains(f.support()))
        throw std::invalid_argument("embed: support " + f.support().to_string() +
                                    " is not contained in target " + target.to_string());
    if (f.support() == target) return f;

    const int n = f.lattice().site_dim;
    const std::size_t legs = target.size();
    const auto fpos = f.support().positions_in(target);
    const auto cpos = complement_positions(legs, fpos);
    const auto foff = leg_offsets(n, legs, fpos);
    const auto coff = leg_offsets(n, legs, cpos);

    const Eigen::Index dim = hilbert_dim(f.lattice(), target);
    Matrix out = Matrix::Zero(dim, dim);
    const Matrix& fm = f.matrix();
    for (Eigen::Index r = 0; r < fm.rows(); ++r) {
        for (Eigen::Index c = 0; c < fm.cols(); ++c) {
            const Complex v = fm(r, c);
            if (v == Complex(0.0, 0.0)) continue;
            for (const Eigen::Index k : coff)
                out(foff[static_cast<std::size_t>(r)] + k, foff[static_cast<std::size_t>(c)] + k) = v;
        }
    }
    return LocalOperator(f.lattice(), target, std::move(out));
}

Complex normalized_trace(const LocalOperator& f) {
    return f.matrix().trace() / static_cast<double>(f.dim());
}

LocalOperator partial_trace(const LocalOperator& f, const Region& x) {
    if (x.empty()) return f;
    if (!f.support().contains(x))
        throw std::invalid_argument("partial_trace: region " + x.to_string() +
                                    " is not inside the support " + f.support().to_string());

    const int n = f.lattice().site_dim;
    const Region y = f.support().difference(x);
    const std::size_t legs = f.support().size();
    const auto ypos = y.positions_in(f.support());
    const auto xpos = x.positions_in(f.support());
    const auto yoff = leg_offsets(n, legs, ypos);
    const auto xoff = leg_offsets(n, legs, xpos);

    const Eigen::Index dy = static_cast<Eigen::Index>(yoff.size());
    const double inv_mass = 1.0 / static_cast<double>(xoff.size());
    Matrix reduced = Matrix::Zero(dy, dy);
    const Matrix& fm = f.matrix();
    for (Eigen::Index r = 0; r < dy; ++r)
        for (Eigen::Index c = 0; c < dy; ++c) {
            Complex acc(0.0, 0.0);
            for (const Eigen::Index z : xoff)
                acc += fm(yoff[static_cast<std::size_t>(r)] + z, yoff[static_cast<std::size_t>(c)] + z);
            reduced(r, c) = acc * inv_mass;
        }
    return embed(LocalOperator(f.lattice(), y, std::move(reduced)), f.support());
}

bool is_hermitian(const LocalOperator& f, double tol) {
    if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");
    const double scale = tol * (1.0 + operator_norm(f));
    return (f.matrix() - f.matrix().adjoint()).cwiseAbs().maxCoeff() <= scale;
}

bool is_positive(const LocalOperator& f, double tol) {
    if (!is_hermitian(f, tol)) return false;
    const double scale = tol * (1.0 + operator_norm(f));
    return herm_eig(f.matrix()).values.minCoeff() >= -scale;
}

LocalOperator adjoint(const LocalOperator& f) {
    return LocalOperator(f.lattice(), f.support(), f.matrix().adjoint());
}

LocalOperator transpose(const LocalOperator& f) {
    return LocalOperator(f.lattice(), f.support(), f.matrix().transpose());
}

double operator_norm(const LocalOperator& f) { return operator_norm(f.matrix()); }

namespace {

std::pair<LocalOperator, LocalOperator> aligned(const LocalOperator& a, const LocalOperator& b) {
    if (!(a.lattice() == b.lattice()))
        throw std::invalid_argument("operators live on different lattices");
    if (a.support() == b.support()) return {a, b};
    const Region u = a.support().unite(b.support());
    return {embed(a, u), embed(b, u)};
}

} // namespace

LocalOperator operator+(const LocalOperator& a, const LocalOperator& b) {
    auto [x, y] = aligned(a, b);
    return LocalOperator(x.lattice(), x.support(), x.matrix() + y.matrix());
}

LocalOperator operator-(const LocalOperator& a, const LocalOperator& b) {
    auto [x, y] = aligned(a, b);
    return LocalOperator(x.lattice(), x.support(), x.matrix() - y.matrix());
}

LocalOperator operator*(const LocalOperator& a, const LocalOperator& b) {
    auto [x, y] = aligned(a, b);
    return LocalOperator(x.lattice(), x.support(), x.matrix() * y.matrix());
}

LocalOperator operator*(Complex c, const LocalOperator& a) {
    return LocalOperator(a.lattice(), a.support(), c * a.matrix());
}

LocalOperator operator*(double c, const LocalOperator& a) {
    return Complex(c, 0.0) * a;
}

LocalOperator operator-(const LocalOperator& a) { return Complex(-1.0, 0.0) * a; }

LocalOperator random_hermitian(const Lattice& lattice, const Region& support, std::uint64_t seed) {
    const Eigen::Index dim = hilbert_dim(lattice, support);
    Rng rng(seed);
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.cgaussian();
    return LocalOperator(lattice, support, 0.5 * (g + g.adjoint()));
}

LocalOperator random_operator(const Lattice& lattice, const Region& support, std::uint64_t seed) {
    const Eigen::Index dim = hilbert_dim(lattice, support);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.cgaussian();
    return LocalOperator(lattice, support, std::move(g));
}

Matrix pauli(char axis) {
    Matrix m(2, 2);
    switch (axis) {
        case 'x': m << 0, 1, 1, 0; break;
        case 'y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
        case 'z': m << 1, 0, 0, -1; break;
        case 'i': m << 1, 0, 0, 1; break;
        default: throw std::invalid_argument(std::string("unknown Pauli axis '") + axis + "'");
    }
    return m;
}

LocalOperator pauli_site(const Lattice& lattice, char axis, const Site& site) {
    if (lattice.site_dim != 2)
        throw std::invalid_argument("Pauli operators need site dimension 2");
    return LocalOperator(lattice, Region::single(site), pauli(axis));
}

// ---------------------------------------------------------------------------
// TraceSpec
// ---------------------------------------------------------------------------

TraceSpec TraceSpec::weighted(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("weighted trace needs at least one weight");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("weighted trace weights must be strictly positive");
    return TraceSpec(Kind::weighted, std::move(weights));
}

double TraceSpec::index_mass(Eigen::Index dim, Eigen::Index i) const {
    switch (kind_) {
        case Kind::normalized: return 1.0 / static_cast<double>(dim);
        case Kind::standard: return 1.0;
        case Kind::weighted:
            if (static_cast<Eigen::Index>(weights_.size()) != dim)
                throw std::invalid_argument("weighted trace has " + std::to_string(weights_.size()) +
                                            " weights for dimension " + std::to_string(dim));
            return weights_[static_cast<std::size_t>(i)];
    }
    throw std::logic_error("unreachable");
}

double TraceSpec::total_mass(Eigen::Index dim) const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) total += index_mass(dim, i);
    return total;
}

// ---------------------------------------------------------------------------
// DensityOperator
// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(LocalOperator op) : op_(std::move(op)) {
    auto eig = herm_eig(op_.matrix());
    eigvals_ = std::move(eig.values);
    eigvecs_ = std::move(eig.vectors);
    validate();
}

DensityOperator::DensityOperator(LocalOperator op, Matrix eigvecs, Eigen::VectorXd eigvals)
    : op_(std::move(op)), eigvecs_(std::move(eigvecs)), eigvals_(std::move(eigvals)) {
    if (eigvals_.size() != op_.dim() || eigvecs_.rows() != op_.dim() || eigvecs_.cols() != op_.dim())
        throw std::invalid_argument("spectral data dimension mismatch");
    validate();
}

void DensityOperator::validate() const {
    if (!is_hermitian(op_, 1e-10))
        throw std::domain_error("density operator is not Hermitian");
    if (!(eigvals_.minCoeff() > 0.0))
        throw std::domain_error("density operator is not strictly positive (min eigenvalue " +
                                std::to_string(eigvals_.minCoeff()) + ")");
    const Complex tr = normalized_trace(op_);
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12)
        throw std::domain_error("density operator does not have unit normalized trace");
}

LocalOperator DensityOperator::power(double a) const {
    if (a == 0.0) return LocalOperator::identity(lattice(), support());
    if (eigvals_.minCoeff() < 1e-300)
        throw std::domain_error("density eigenvalue below the 1e-300 floor; fractional power refused");
    Eigen::VectorXd pw(eigvals_.size());
    for (Eigen::Index i = 0; i < eigvals_.size(); ++i) pw(i) = std::pow(eigvals_(i), a);
    Matrix m = eigvecs_ * pw.asDiagonal() * eigvecs_.adjoint();
    return LocalOperator(lattice(), support(), 0.5 * (m + m.adjoint()));
}

LocalOperator DensityOperator::complex_power(Complex z) const {
    if (z.imag() == 0.0) return power(z.real());
    if (eigvals_.minCoeff() < 1e-300)
        throw std::domain_error("density eigenvalue below the 1e-300 floor; complex power refused");
    Eigen::VectorXcd pw(eigvals_.size());
    for (Eigen::Index i = 0; i < eigvals_.size(); ++i)
        pw(i) = std::exp(z * std::log(eigvals_(i)));
    return LocalOperator(lattice(), support(), eigvecs_ * pw.asDiagonal() * eigvecs_.adjoint());
}

DensityOperator random_state(const Lattice& lattice, const Region& support, std::uint64_t seed) {
    const Eigen::Index dim = hilbert_dim(lattice, support);
    Rng rng(seed);
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.cgaussian();
    Matrix s = g * g.adjoint() + 1e-6 * Matrix::Identity(dim, dim);
    const double tr = s.trace().real() / static_cast<double>(dim);
    s /= tr;
    return DensityOperator(LocalOperator(lattice, support, std::move(s)));
}

} // namespace qnc
