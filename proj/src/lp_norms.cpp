#include "qnc/lp_norms.hpp"

#include <cmath>
#include <limits>

namespace qnc {

LocalOperator fractional_power(const DensityOperator& rho, double a) { return rho.power(a); }

namespace {

void check_params(double p, double s) {
    if (std::isnan(p) || (!std::isinf(p) && p < 1.0))
        throw std::invalid_argument("norm parameter p must satisfy p >= 1 (or be infinite)");
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("norm parameter s must lie in [0, 1]");
}

} // namespace

double lps_norm(const LocalOperator& f, const DensityOperator& rho, double p, double s) {
    check_params(p, s);
    const LocalOperator fe = embed(f, rho.support());
    if (std::isinf(p)) return operator_norm(fe);
    const Matrix a = rho.power((1.0 - s) / p).matrix() * fe.matrix() * rho.power(s / p).matrix();
    const Eigen::VectorXd sv = singular_values(a);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p);
    acc /= static_cast<double>(sv.size());
    return std::pow(acc, 1.0 / p);
}

Complex kms_inner(const LocalOperator& f, const LocalOperator& g, const DensityOperator& rho,
                  double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("kms_inner needs s in [0, 1]");
    const Matrix fe = embed(f, rho.support()).matrix();
    const Matrix ge = embed(g, rho.support()).matrix();
    const Matrix m = rho.power(1.0 - s).matrix() * fe.adjoint() * rho.power(s).matrix() * ge;
    return m.trace() / static_cast<double>(m.rows());
}

Complex duality_pairing(const LocalOperator& g, const LocalOperator& f,
                        const DensityOperator& rho, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("duality_pairing needs s in [0, 1]");
    const Matrix fe = embed(f, rho.support()).matrix();
    const Matrix ge = embed(g, rho.support()).matrix();
    const Matrix m = rho.power(s).matrix() * ge.adjoint() * rho.power(1.0 - s).matrix() * fe;
    return m.trace() / static_cast<double>(m.rows());
}

HolderReport holder_check(const LocalOperator& f, const LocalOperator& g,
                          const DensityOperator& rho, double p, double s) {
    check_params(p, s);
    if (!(p > 1.0) || std::isinf(p))
        throw std::invalid_argument("holder_check needs p in (1, infinity)");
    const double q = p / (p - 1.0);
    HolderReport rep;
    rep.pairing_abs = std::abs(duality_pairing(g, f, rho, s));
    rep.norm_f = lps_norm(f, rho, p, s);
    rep.norm_g = lps_norm(g, rho, q, s);
    const double denom = rep.norm_f * rep.norm_g;
    rep.ratio = denom > 0.0 ? rep.pairing_abs / denom : 0.0;
    rep.pass = rep.ratio <= 1.0 + 1e-10;
    return rep;
}

double duality_norm_estimate(const LocalOperator& f, const DensityOperator& rho, double p,
                             double s, int sample_count, std::uint64_t seed) {
    if (!(p > 1.0 && p < 2.0))
        throw std::invalid_argument("duality_norm_estimate is the p in (1,2) route");
    if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
    check_params(p, s);
    const double q = p / (p - 1.0);

    std::vector<LocalOperator> candidates;
    candidates.push_back(LocalOperator::identity(rho.lattice(), rho.support()));

    // polar-decomposition witness: with A = rho^{(1-s)/p} f rho^{s/p} = U S V*,
    // g = rho^{-(1-s)/q} U S^{p-1} V* rho^{-s/q} attains the supremum.
    const LocalOperator fe = embed(f, rho.support());
    const Matrix a = rho.power((1.0 - s) / p).matrix() * fe.matrix() * rho.power(s / p).matrix();
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(0) > 0.0) {
        Eigen::VectorXd d(svd.singularValues().size());
        for (Eigen::Index i = 0; i < d.size(); ++i)
            d(i) = std::pow(svd.singularValues()(i), p - 1.0);
        const Matrix b = svd.matrixU() * d.asDiagonal() * svd.matrixV().adjoint();
        const Matrix gm =
            rho.power(-(1.0 - s) / q).matrix() * b * rho.power(-s / q).matrix();
        candidates.emplace_back(rho.lattice(), rho.support(), gm);
    }

    for (int i = 0; i < sample_count; ++i)
        candidates.push_back(random_hermitian(rho.lattice(), rho.support(), seed + 977u * i));

    double best = 0.0;
    for (const auto& g : candidates) {
        const double ng = lps_norm(g, rho, q, s);
        if (!(ng > 0.0)) continue;
        best = std::max(best, std::abs(duality_pairing(g, f, rho, s)) / ng);
    }
    return best;
}

std::vector<double> monotonicity_sweep(const Potential& phi, double beta, const LocalOperator& f,
                                       const std::vector<Region>& volumes, double p, double s) {
    check_params(p, s);
    if (volumes.empty()) throw std::invalid_argument("monotonicity_sweep needs at least one volume");
    for (std::size_t i = 0; i < volumes.size(); ++i) {
        if (!volumes[i].contains(f.support()))
            throw std::invalid_argument("volume " + volumes[i].to_string() +
                                        " does not contain the observable's support");
        if (i > 0 && !volumes[i].contains(volumes[i - 1]))
            throw std::invalid_argument("volumes are not nested increasing");
    }
    std::vector<double> norms;
    norms.reserve(volumes.size());
    for (const auto& v : volumes)
        norms.push_back(lps_norm(f, gibbs_density(phi, v, beta), p, s));
    return norms;
}

} // namespace qnc
