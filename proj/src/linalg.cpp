#include "hankelmc/linalg.hpp"

#include <algorithm>

#include <lapacke.h>

namespace hmc {

namespace {

Svd eigen_fallback(const CMatrix &m) {
    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

} // namespace

Svd thin_svd(const CMatrix &m) {
    const auto rows = static_cast<lapack_int>(m.rows());
    const auto cols = static_cast<lapack_int>(m.cols());
    const lapack_int k = std::min(rows, cols);
    if (k == 0)
        return {CMatrix(m.rows(), 0), RVector(0), CMatrix(m.cols(), 0)};

    CMatrix a = m;
    Svd out{CMatrix(rows, k), RVector(k), CMatrix()};
    CMatrix vh(k, cols);
    const lapack_int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'S', rows, cols,
        reinterpret_cast<lapack_complex_double *>(a.data()), rows, out.S.data(),
        reinterpret_cast<lapack_complex_double *>(out.U.data()), rows,
        reinterpret_cast<lapack_complex_double *>(vh.data()), k);
    if (info != 0)
        return eigen_fallback(m);
    out.V = vh.adjoint();
    return out;
}

RVector singular_values(const CMatrix &m) {
    const auto rows = static_cast<lapack_int>(m.rows());
    const auto cols = static_cast<lapack_int>(m.cols());
    const lapack_int k = std::min(rows, cols);
    if (k == 0)
        return RVector(0);
    CMatrix a = m;
    RVector s(k);
    const lapack_int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'N', rows, cols,
        reinterpret_cast<lapack_complex_double *>(a.data()), rows, s.data(),
        nullptr, 1, nullptr, 1);
    if (info != 0)
        return Eigen::BDCSVD<CMatrix>(m).singularValues();
    return s;
}

double spectral_norm(const CMatrix &m) {
    const RVector s = singular_values(m);
    return s.size() == 0 ? 0.0 : s(0);
}

double nuclear_norm(const CMatrix &m) { return singular_values(m).sum(); }

double rank_ratio(const CMatrix &m, Eigen::Index r) {
    const RVector s = singular_values(m);
    if (s.size() <= r || s(0) == 0.0)
        return 0.0;
    return s(r) / s(0);
}

} // namespace hmc
