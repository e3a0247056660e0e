#include "hankelmc/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hmc {

HankelShape::HankelShape(Eigen::Index rows, Eigen::Index cols) : n1(rows), n2(cols) {
    if (rows < 1 || cols < 1)
        throw DomainError("HankelShape: n1 and n2 must be positive");
}

HankelShape HankelShape::for_length(Eigen::Index n) {
    if (n < 1)
        throw DomainError("HankelShape::for_length: n must be positive");
    if (n % 2 == 1)
        return {(n + 1) / 2, (n + 1) / 2};
    return {n / 2 + 1, n / 2};
}

TwoLevelShape::TwoLevelShape(Eigen::Index l1, Eigen::Index k1, Eigen::Index l2,
                             Eigen::Index k2)
    : L1(l1), K1(k1), L2(l2), K2(k2) {
    if (l1 < 1 || k1 < 1 || l2 < 1 || k2 < 1)
        throw DomainError("TwoLevelShape: all pencil parameters must be positive");
}

TwoLevelShape TwoLevelShape::for_size(Eigen::Index n, Eigen::Index s) {
    const auto a = HankelShape::for_length(n);
    const auto b = HankelShape::for_length(s);
    return {a.n1, a.n2, b.n1, b.n2};
}

CMatrix hankel_lift(const CVector &x, const HankelShape &shape) {
    if (x.size() != shape.n())
        throw DimensionError("hankel_lift: vector length " + std::to_string(x.size()) +
                             " != n1 + n2 - 1 = " + std::to_string(shape.n()));
    CMatrix m(shape.n1, shape.n2);
    for (Eigen::Index k = 0; k < shape.n2; ++k)
        m.col(k) = x.segment(k, shape.n1);
    return m;
}

CVector hankel_adjoint(const CMatrix &m, const HankelShape &shape) {
    if (m.rows() != shape.n1 || m.cols() != shape.n2)
        throw DimensionError("hankel_adjoint: matrix is not n1 x n2");
    CVector y = CVector::Zero(shape.n());
    for (Eigen::Index k = 0; k < shape.n2; ++k)
        y.segment(k, shape.n1) += m.col(k);
    return y;
}

Eigen::VectorXi antidiag_weights(const HankelShape &shape) {
    Eigen::VectorXi w(shape.n());
    const auto lo = std::min(shape.n1, shape.n2);
    for (Eigen::Index a = 0; a < shape.n(); ++a) {
        // 0-based anti-diagonal a holds pairs (j, a - j), 0 <= j < n1, 0 <= a - j < n2
        const auto first = std::max<Eigen::Index>(0, a - shape.n2 + 1);
        const auto last = std::min(a, shape.n1 - 1);
        w(a) = static_cast<int>(std::min(last - first + 1, lo));
    }
    return w;
}

CMatrix g_lift(const CVector &x, const HankelShape &shape) {
    if (x.size() != shape.n())
        throw DimensionError("g_lift: vector length does not match shape");
    const RVector w = antidiag_weights(shape).cast<double>();
    return hankel_lift(x.cwiseQuotient(w.cwiseSqrt().cast<cplx>()), shape);
}

CVector g_adjoint(const CMatrix &m, const HankelShape &shape) {
    const RVector w = antidiag_weights(shape).cast<double>();
    return hankel_adjoint(m, shape).cwiseQuotient(w.cwiseSqrt().cast<cplx>());
}

CMatrix g_basis(Eigen::Index k, const HankelShape &shape) {
    if (k < 0 || k >= shape.n())
        throw DomainError("g_basis: index out of range");
    CVector e = CVector::Zero(shape.n());
    e(k) = 1.0;
    return g_lift(e, shape);
}

CMatrix two_level_lift(const CMatrix &slice, const TwoLevelShape &shape) {
    if (slice.rows() != shape.n() || slice.cols() != shape.s())
        throw DimensionError("two_level_lift: slice must be (L1+K1-1) x (L2+K2-1)");
    const auto inner = shape.inner();
    CMatrix out(shape.rows(), shape.cols());
    for (Eigen::Index p = 0; p < shape.L1; ++p)
        for (Eigen::Index q = 0; q < shape.K1; ++q)
            out.block(p * shape.L2, q * shape.K2, shape.L2, shape.K2) =
                hankel_lift(slice.row(p + q).transpose(), inner);
    return out;
}

CMatrix two_level_adjoint(const CMatrix &m, const TwoLevelShape &shape) {
    if (m.rows() != shape.rows() || m.cols() != shape.cols())
        throw DimensionError("two_level_adjoint: matrix is not (L1 L2) x (K1 K2)");
    const auto inner = shape.inner();
    CMatrix out = CMatrix::Zero(shape.n(), shape.s());
    for (Eigen::Index p = 0; p < shape.L1; ++p)
        for (Eigen::Index q = 0; q < shape.K1; ++q)
            out.row(p + q) +=
                hankel_adjoint(m.block(p * shape.L2, q * shape.K2, shape.L2, shape.K2), inner)
                    .transpose();
    return out;
}

IMatrix two_level_weights(const TwoLevelShape &shape) {
    const Eigen::VectorXi a = antidiag_weights(shape.outer());
    const Eigen::VectorXi b = antidiag_weights(shape.inner());
    return a * b.transpose();
}

} // namespace hmc
