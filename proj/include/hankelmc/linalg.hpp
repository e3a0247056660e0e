#pragma once

#include "hankelmc/types.hpp"

namespace hmc {

/// Thin SVD M = U diag(S) V^H with S sorted in decreasing order.
struct Svd {
    CMatrix U;
    RVector S;
    CMatrix V;
};

/// Backed by LAPACK zgesdd; falls back to Eigen's BDCSVD if LAPACK reports
/// a convergence failure.
Svd thin_svd(const CMatrix &m);

RVector singular_values(const CMatrix &m);

double spectral_norm(const CMatrix &m);
double nuclear_norm(const CMatrix &m);

/// sigma_{r+1} / sigma_1 (0 when the matrix has at most r singular values or
/// is identically zero).
double rank_ratio(const CMatrix &m, Eigen::Index r);

} // namespace hmc
