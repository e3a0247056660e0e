#pragma once

#include "hankelmc/hankel.hpp"
#include "hankelmc/types.hpp"

namespace hmc {

/// Unitary DFT: F(j,k) = exp(-2 pi i j k / d) / sqrt(d), so F * ones = sqrt(d) e_1.
CMatrix unitary_dft(Eigen::Index d);

/// Block i is g_lift of row i of F X. Isometric: ghat_adjoint(ghat_lift(X)) = X.
BlockDiagonal ghat_lift(const CMatrix &x, const HankelShape &shape);

/// Block i is hankel_lift of row i of F X (the unnormalized Fourier-domain lift).
BlockDiagonal hankel_blockdiag(const CMatrix &x, const HankelShape &shape);

/// F^{-1} applied to the stacked rows g_adjoint(Z_i). Block shape fixes n1, n2.
CMatrix ghat_adjoint(const BlockDiagonal &z);

/// ghat_lift(ghat_adjoint(Z)): orthogonal projection onto block-diagonal
/// matrices with Hankel blocks that come from some d x n matrix.
BlockDiagonal ghat_project(const BlockDiagonal &z);

/// ghat_lift(e_j e_k^T); 0-based (j, k).
BlockDiagonal ghat_basis(Eigen::Index j, Eigen::Index k, Eigen::Index d,
                         const HankelShape &shape);

/// Applies F along every tube X(j, k, :).
Array3 tube_dft(const Array3 &x);
Array3 inverse_tube_dft(const Array3 &x);

/// Block i is two_level_lift of frontal slice i of the tube-DFT of X.
BlockDiagonal two_level_blockdiag(const Array3 &x, const TwoLevelShape &shape);

} // namespace hmc
