#pragma once

#include "qnc/gibbs.hpp"
#include "qnc/operators.hpp"

namespace qnc {

/// rho^a through the cached spectral decomposition.
LocalOperator fractional_power(const DensityOperator& rho, double a);

/// || f ||_{L_{p,s}(omega)} = (Tr |rho^{(1-s)/p} f rho^{s/p}|^p)^{1/p} with the
/// normalized trace; the exponents sum to 1/p so that ||1|| = 1. p may be
/// +infinity, which gives the operator norm.
double lps_norm(const LocalOperator& f, const DensityOperator& rho, double p, double s);

/// <f, g>_s = Tr(rho^{1-s} f* rho^s g); s = 1/2 is the symmetric (KMS) inner
/// product, the scalar product of L_2(omega, 1/2).
Complex kms_inner(const LocalOperator& f, const LocalOperator& g, const DensityOperator& rho,
                  double s);

/// Duality pairing <g, f>_{omega,s} = Tr(rho^s g* rho^{1-s} f): the
/// polarization of the L_{2,s} norm, for which the (p,q) Hoelder inequality
/// |<g,f>| <= ||g||_{q,s} ||f||_{p,s} holds exactly.
Complex duality_pairing(const LocalOperator& g, const LocalOperator& f,
                        const DensityOperator& rho, double s);

struct HolderReport {
    double pairing_abs = 0.0;
    double norm_f = 0.0;
    double norm_g = 0.0;
    double ratio = 0.0;  // |<g,f>| / (||g||_q ||f||_p), 0 when a norm vanishes
    bool pass = false;   // ratio <= 1 + 1e-10
};

HolderReport holder_check(const LocalOperator& f, const LocalOperator& g,
                          const DensityOperator& rho, double p, double s);

/// Monte-Carlo lower bound for sup_{||g||_q <= 1} |<g,f>_{omega,s}| with
/// p in (1,2). The candidate set contains the identity and the polar-
/// decomposition dual witness, so the bound is attained up to roundoff.
double duality_norm_estimate(const LocalOperator& f, const DensityOperator& rho, double p,
                             double s, int sample_count, std::uint64_t seed);

/// L_{p,s} norms of f across a nested increasing family of volumes at fixed
/// (Phi, beta). Monotonicity (non-increasing for p >= 2) is
/// asserted by callers, not here.
std::vector<double> monotonicity_sweep(const Potential& phi, double beta, const LocalOperator& f,
                                       const std::vector<Region>& volumes, double p, double s);

} // namespace qnc
