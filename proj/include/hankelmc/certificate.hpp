#pragma once

#include <cstdint>
#include <vector>

#include "hankelmc/geometry.hpp"
#include "hankelmc/sampling.hpp"
#include "hankelmc/types.hpp"

namespace hmc {

/// sqrt( (1/d) sum_i sum_k |<Z_i, G_k>|^2 / w_k ), evaluated blockwise.
double gf_norm(const BlockDiagonal &z);

/// Same norm summed over the Fourier basis:
/// sqrt( sum_{j,k} |<Z, G_hat_{j,k}>|^2 / (d w_k) ). Slow; used as a cross-check.
double gf_norm_by_basis(const BlockDiagonal &z);

/// max_{j,k} |<Z, G_hat_{j,k}>| / sqrt(d w_k).
double ginf_norm(const BlockDiagonal &z);

/// G_hat P_Omega G_hat^* (Z).
BlockDiagonal sampled_projection(const BlockDiagonal &z, const SamplingMask &mask);

/// (1/p) P_T G_hat P_Omega G_hat^* P_T (W) - P_T G_hat G_hat^* P_T (W).
BlockDiagonal deviation_apply(const TangentSpace &t, const SamplingMask &mask, double p,
                              const BlockDiagonal &w);

struct PowerIterationOptions {
    double tol = 1e-4;
    int max_iter = 500;
    std::uint64_t seed = 0;
};

struct NormEstimate {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Operator norm of deviation_apply by power iteration from a seeded random
/// unit vector in T. Converged once the estimate moves by less than tol
/// (relative) on two consecutive steps.
NormEstimate rip_deviation(const TangentSpace &t, const SamplingMask &mask, double p,
                           const PowerIterationOptions &opts = {});

struct GolfingResult {
    BlockDiagonal lambda;
    /// ||E_k||_F for k = 0..k0, with E_k = UV^H - P_T(Z^k).
    std::vector<double> residuals;

    /// Number of steps with ||E_k|| <= ||E_{k-1}|| / 2.
    int halving_steps() const;
};

/// Z^0 = 0,
/// Z^k = Z^{k-1} + ((1/q) G_hat P_{Omega_k} G_hat^* + (I - G_hat G_hat^*)) P_T(UV^H - P_T Z^{k-1}),
/// Lambda = Z^{k0}.
GolfingResult golfing_certificate(const TangentSpace &t, const BlockDiagonal &uv,
                                  const GolfingPartition &partition);

struct CertificateReport {
    double fro_gap = 0.0;   ///< ||P_T(Lambda) - UV^H||_F
    double fro_bound = 0.0; ///< 1/n
    double perp_norm = 0.0; ///< ||P_T^perp(Lambda)||
    double perp_bound = 0.5;
    double omega_residual = 0.0; ///< ||G P_Omega G^*(Lambda) - G G^*(Lambda)||_F
    double omega_tol = 1e-9;
    double rip_deviation = 0.0;
    double rip_bound = 0.5;
    bool rip_converged = false;
    bool passed = false;
};

/// Checks the four sufficient optimality conditions for Lambda.
CertificateReport verify_certificate(const BlockDiagonal &lambda, const TangentSpace &t,
                                     const SamplingMask &mask, double p,
                                     const PowerIterationOptions &opts = {});

/// Closed-form certificate for the rank-one all-ones-column matrix.
struct SpecialCertificate {
    RVector lambda;            ///< sqrt(d)/|Omega| on Omega, 0 elsewhere
    CVector transformed;       ///< F D_Omega lambda
    double first_entry_error = 0.0; ///< |[F D_Omega lambda]_1 - 1|
    double max_off_entry = 0.0;     ///< max_{j >= 2} |[F D_Omega lambda]_j|
    bool parity_pair = false;       ///< Omega holds two indices of different parity
    bool passed = false;
};

/// `omega` holds 1-based row indices of observed entries in the first column.
/// Requires d = 2^L and |omega| >= 2.
SpecialCertificate special_dual_certificate(const std::vector<Eigen::Index> &omega,
                                            Eigen::Index d);

/// ||P_T W||_F against (2 sqrt 2 / p) ||P_T^perp W||_F for a perturbation W
/// that should satisfy G P_Omega G^* W = 0 and (I - G G^*) W = 0.
struct TangentBalance {
    double tangent_norm = 0.0;
    double bound = 0.0;
    double ratio = 0.0; ///< tangent_norm / bound (inf when bound is 0)
    double feasibility_residual = 0.0;
};

TangentBalance tangent_balance(const TangentSpace &t, const BlockDiagonal &w,
                               const SamplingMask &mask, double p);

} // namespace hmc
