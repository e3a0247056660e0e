#pragma once

#include <optional>
#include <vector>

#include "hankelmc/hankel.hpp"
#include "hankelmc/sampling.hpp"
#include "hankelmc/types.hpp"

namespace hmc {

struct SolverConfig {
    double rho = 0.05;
    double tol_primal = 1e-7;
    double tol_dual = 1e-7;
    int max_iter = 3000;
    /// A recovery counts as successful when relative_error < success_threshold.
    double success_threshold = 1e-3;
    /// Record sum of block nuclear norms at every iterate (costs one extra
    /// set of SVDs per iteration).
    bool record_objective = false;

    /// Throws DomainError on non-positive parameters.
    void validate() const;
};

template <class Field>
struct SolveResult {
    Field X;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = false;
    std::optional<double> relative_error;
    std::vector<double> objective;

    bool succeeded(const SolverConfig &cfg) const {
        return relative_error && *relative_error < cfg.success_threshold;
    }
};

/// Singular value soft-thresholding U max(S - tau, 0) V^H.
CMatrix svt(const CMatrix &m, double tau);

/// ADMM for  min sum_i ||H(e_i^T F X)||_*  s.t.  P_Omega(X) = P_Omega(observed).
///
/// Splitting H(F X) = Z with scaled multiplier Lambda:
///   Z_i    <- svt(H(row i of F X) + Lambda_i, 1/rho)
///   X      <- exact minimizer of sum_i ||H(row i of F X) - Z_i + Lambda_i||_F^2
///             over the unobserved entries (entrywise, since H^*H = diag(w))
///   Lambda <- Lambda + H(F X) - Z
/// Every iterate is feasible. When `truth` is given, relative_error is filled.
SolveResult<CMatrix> admm_complete(const CMatrix &observed, const SamplingMask &mask,
                                   const HankelShape &shape, const SolverConfig &cfg = {},
                                   const CMatrix *truth = nullptr);

/// Same splitting for an n x s x d array: tube DFT, then a two-level Hankel
/// lift of every frontal slice.
SolveResult<Array3> admm_complete_3d(const Array3 &observed, const SamplingMask &mask,
                                     const TwoLevelShape &shape,
                                     const SolverConfig &cfg = {},
                                     const Array3 *truth = nullptr);

/// The closed-form X-update: argmin over X with P_Omega(X) = P_Omega(observed)
/// of sum_i ||H(row i of F X) - targets_i||_F^2.
CMatrix exact_x_step(const CMatrix &observed, const SamplingMask &mask,
                     const HankelShape &shape, const std::vector<CMatrix> &targets);

/// sum_i ||H(row i of F X)||_*.
double hankel_objective(const CMatrix &x, const HankelShape &shape);

double relative_error(const CMatrix &x, const CMatrix &reference);
double relative_error(const Array3 &x, const Array3 &reference);

} // namespace hmc
