#pragma once

#include <vector>

#include "hankelmc/hankel.hpp"
#include "hankelmc/types.hpp"

namespace hmc {

/// Per-block compact singular factors of a block-diagonal matrix. A zero
/// block has rank 0 and empty factors.
struct TangentSpace {
    std::vector<CMatrix> U; ///< n1 x r_a, orthonormal columns
    std::vector<CMatrix> V; ///< n2 x r_a, orthonormal columns
    std::vector<RVector> sigma;
    Eigen::Index n1 = 0, n2 = 0;

    std::size_t blocks() const { return U.size(); }
    Eigen::Index rank(std::size_t a) const { return U[a].cols(); }
    /// max_a r_a; the common rank used by the incoherence parameters.
    Eigen::Index max_rank() const;
    /// sum_a r_a.
    Eigen::Index total_rank() const;
};

inline constexpr double kDefaultRankTol = 1e-8;

/// Compact SVD of each block, keeping sigma > rank_tol * sigma_max(block).
/// Blocks whose largest singular value is below 1e-12 get rank 0.
TangentSpace block_svd(const BlockDiagonal &z, double rank_tol = kDefaultRankTol);

/// U U^H W + W V V^H - U U^H W V V^H, blockwise.
BlockDiagonal tangent_project(const TangentSpace &t, const BlockDiagonal &w);
/// W - tangent_project(t, W).
BlockDiagonal tangent_complement(const TangentSpace &t, const BlockDiagonal &w);

/// Block-diagonal U_a V_a^H.
BlockDiagonal sign_matrix(const TangentSpace &t);

/// Average-case incoherence. The raw values are the row-energy maxima
///   max_i (1/d) sum_a ||e_i^T U_a||^2  (and the V analogue),
/// and mu = (n / r) * raw with r = max_a r_a and n = n1 + n2 - 1.
struct AverageIncoherence {
    double raw_u = 0.0, raw_v = 0.0;
    double mu_u = 0.0, mu_v = 0.0;
    double mu0 = 0.0;
    Eigen::Index r = 0;
    Eigen::Index n = 0;
};

struct WorstIncoherence {
    double raw = 0.0; ///< max over (i, a) of ||e_i^T U_a||^2 and ||e_i^T V_a||^2
    double mu1 = 0.0;
};

/// Requires square blocks (odd n); throws DomainError for r = 0.
AverageIncoherence avg_incoherence(const TangentSpace &t);
WorstIncoherence worst_incoherence(const TangentSpace &t);

/// Evaluation of the two incoherence consequences:
///   max_k (1/d) sum_a ||G_k^H U_a||_F^2  <= mu0 r / n   (and the V side)
///   max_{j,k} ||P_T G_hat(e_j e_k^T)||_F^2 <= 2 mu0 r / n
struct IncoherenceConsequences {
    double ineq1_u = 0.0, ineq1_v = 0.0;
    double ineq1_bound = 0.0;
    double ineq2 = 0.0;
    double ineq2_bound = 0.0;
    double slack = 0.0;
    bool ineq1_holds = false;
    bool ineq2_holds = false;
    double mu0 = 0.0;

    bool holds() const { return ineq1_holds && ineq2_holds; }
};

IncoherenceConsequences check_incoherence_consequences(const TangentSpace &t,
                                                       double slack = 1e-10);

} // namespace hmc
