#pragma once

#include "hankelmc/types.hpp"

namespace hmc {

/// Shape of a one-level Hankel lift: vectors of length n = n1 + n2 - 1 map to
/// n1 x n2 matrices.
struct HankelShape {
    Eigen::Index n1 = 1;
    Eigen::Index n2 = 1;

    HankelShape() = default;
    HankelShape(Eigen::Index rows, Eigen::Index cols);

    Eigen::Index n() const { return n1 + n2 - 1; }
    bool square() const { return n1 == n2; }

    /// Default split for a length-n vector: (n+1)/2 x (n+1)/2 for odd n,
    /// (n/2+1) x (n/2) for even n.
    static HankelShape for_length(Eigen::Index n);

    friend bool operator==(const HankelShape &, const HankelShape &) = default;
};

/// Two-level (Hankel-of-Hankel) shape for n x s slices: the outer level lifts
/// the n rows with (L1, K1), each inner block lifts a length-s row with
/// (L2, K2).
struct TwoLevelShape {
    Eigen::Index L1 = 1, K1 = 1, L2 = 1, K2 = 1;

    TwoLevelShape() = default;
    TwoLevelShape(Eigen::Index l1, Eigen::Index k1, Eigen::Index l2, Eigen::Index k2);

    Eigen::Index n() const { return L1 + K1 - 1; }
    Eigen::Index s() const { return L2 + K2 - 1; }
    Eigen::Index rows() const { return L1 * L2; }
    Eigen::Index cols() const { return K1 * K2; }
    HankelShape outer() const { return {L1, K1}; }
    HankelShape inner() const { return {L2, K2}; }

    static TwoLevelShape for_size(Eigen::Index n, Eigen::Index s);

    friend bool operator==(const TwoLevelShape &, const TwoLevelShape &) = default;
};

/// M(j,k) = x(j+k).
CMatrix hankel_lift(const CVector &x, const HankelShape &shape);

/// y(a) = sum over the a-th anti-diagonal of M.
CVector hankel_adjoint(const CMatrix &m, const HankelShape &shape);

/// Anti-diagonal multiplicities w; hankel_adjoint(hankel_lift(x)) = w .* x.
Eigen::VectorXi antidiag_weights(const HankelShape &shape);

/// Orthonormal Hankel lift: hankel_lift(x ./ sqrt(w)).
CMatrix g_lift(const CVector &x, const HankelShape &shape);

/// Adjoint of g_lift, and also its left inverse.
CVector g_adjoint(const CMatrix &m, const HankelShape &shape);

/// Basis element G_k = g_lift(e_k) (0-based k).
CMatrix g_basis(Eigen::Index k, const HankelShape &shape);

CMatrix two_level_lift(const CMatrix &slice, const TwoLevelShape &shape);
CMatrix two_level_adjoint(const CMatrix &m, const TwoLevelShape &shape);

/// W(a,b) = w_outer(a) * w_inner(b): how many times slice entry (a,b)
/// appears in the two-level lift.
IMatrix two_level_weights(const TwoLevelShape &shape);

} // namespace hmc
