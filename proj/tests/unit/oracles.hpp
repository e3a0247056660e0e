#pragma once

// Brute-force reference implementations used as oracles by the tests. They
// are written from the definitions with plain loops and dense matrices and
// share no code paths with the library.

#include <cstdint>
#include <vector>

#include "hankelmc/geometry.hpp"
#include "hankelmc/hankel.hpp"
#include "hankelmc/rng.hpp"
#include "hankelmc/sampling.hpp"
#include "hankelmc/types.hpp"

namespace oracle {

using hmc::CMatrix;
using hmc::CVector;
using hmc::cplx;

CVector random_vector(Eigen::Index n, hmc::Rng &rng);
CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, hmc::Rng &rng);
hmc::BlockDiagonal random_blocks(std::size_t d, Eigen::Index n1, Eigen::Index n2,
                                 hmc::Rng &rng);

/// M(j,k) = x(j+k), filled entry by entry.
CMatrix hankel(const CVector &x, Eigen::Index n1, Eigen::Index n2);
/// Counts positions (j,k) with j+k = a.
std::vector<int> weights(Eigen::Index n1, Eigen::Index n2);
/// exp(-2 pi i j k / d) / sqrt(d) from the formula.
CMatrix dft(Eigen::Index d);

/// Dense matrix of X -> G_hat(X), vec(d x n) -> vec of the stacked blocks
/// (block-major, column-major within a block).
CMatrix ghat_dense(Eigen::Index d, const hmc::HankelShape &shape);
/// Dense matrix of the tangent projector in the same block vectorization.
CMatrix tangent_dense(const hmc::TangentSpace &t);
/// Diagonal 0/1 matrix of P_Omega on vec(d x n).
CMatrix mask_dense(const hmc::SamplingMask &mask);

/// Largest |eigenvalue| of P_T ((1/p) G P_Omega G^* - G G^*) P_T, matricized.
double rip_deviation_dense(const hmc::TangentSpace &t, const hmc::SamplingMask &mask,
                           double p);

/// argmin over the unobserved entries of sum_i ||hankel(row i of F X) - T_i||_F^2
/// solved as one dense least-squares problem.
CMatrix x_step_dense(const CMatrix &observed, const hmc::SamplingMask &mask,
                     const hmc::HankelShape &shape, const std::vector<CMatrix> &targets);

/// Relative difference ||a - b|| / max(||b||, tiny).
double rel(const CMatrix &a, const CMatrix &b);

} // namespace oracle
