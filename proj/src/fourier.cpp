#include "hankelmc/fourier.hpp"

#include <cmath>
#include <numbers>

namespace hmc {

CMatrix unitary_dft(Eigen::Index d) {
    if (d < 1)
        throw DomainError("unitary_dft: d must be positive");
    CMatrix f(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) {
            // reduce j*k mod d first so large d keeps full phase accuracy
            const double phase = -2.0 * std::numbers::pi *
                                 static_cast<double>((j * k) % d) / static_cast<double>(d);
            f(j, k) = std::polar(scale, phase);
        }
    return f;
}

namespace {

void require_matrix_shape(const CMatrix &x, const HankelShape &shape, const char *where) {
    if (x.cols() != shape.n() || x.rows() < 1)
        throw DimensionError(std::string(where) + ": X must be d x (n1 + n2 - 1)");
}

} // namespace

BlockDiagonal ghat_lift(const CMatrix &x, const HankelShape &shape) {
    require_matrix_shape(x, shape, "ghat_lift");
    const CMatrix y = unitary_dft(x.rows()) * x;
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < y.rows(); ++i)
        blocks.push_back(g_lift(y.row(i).transpose(), shape));
    return BlockDiagonal(std::move(blocks));
}

BlockDiagonal hankel_blockdiag(const CMatrix &x, const HankelShape &shape) {
    require_matrix_shape(x, shape, "hankel_blockdiag");
    const CMatrix y = unitary_dft(x.rows()) * x;
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < y.rows(); ++i)
        blocks.push_back(hankel_lift(y.row(i).transpose(), shape));
    return BlockDiagonal(std::move(blocks));
}

CMatrix ghat_adjoint(const BlockDiagonal &z) {
    if (z.size() == 0)
        throw DimensionError("ghat_adjoint: empty block list");
    const HankelShape shape(z.block_rows(), z.block_cols());
    const auto d = static_cast<Eigen::Index>(z.size());
    CMatrix y(d, shape.n());
    for (Eigen::Index i = 0; i < d; ++i)
        y.row(i) = g_adjoint(z[static_cast<std::size_t>(i)], shape).transpose();
    return unitary_dft(d).adjoint() * y;
}

BlockDiagonal ghat_project(const BlockDiagonal &z) {
    return ghat_lift(ghat_adjoint(z), HankelShape(z.block_rows(), z.block_cols()));
}

BlockDiagonal ghat_basis(Eigen::Index j, Eigen::Index k, Eigen::Index d,
                         const HankelShape &shape) {
    if (d < 1 || j < 0 || j >= d || k < 0 || k >= shape.n())
        throw DomainError("ghat_basis: index out of range");
    const CMatrix f = unitary_dft(d);
    const CMatrix gk = g_basis(k, shape);
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i)
        blocks.push_back(f(i, j) * gk);
    return BlockDiagonal(std::move(blocks));
}

namespace {

Array3 apply_along_tubes(const Array3 &x, const CMatrix &f) {
    Array3 out(x.n(), x.s(), x.d());
    for (Eigen::Index i = 0; i < x.d(); ++i)
        for (Eigen::Index l = 0; l < x.d(); ++l)
            out.slice(i) += f(i, l) * x.slice(l);
    return out;
}

} // namespace

Array3 tube_dft(const Array3 &x) { return apply_along_tubes(x, unitary_dft(x.d())); }

Array3 inverse_tube_dft(const Array3 &x) {
    return apply_along_tubes(x, unitary_dft(x.d()).adjoint());
}

BlockDiagonal two_level_blockdiag(const Array3 &x, const TwoLevelShape &shape) {
    const Array3 xhat = tube_dft(x);
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(x.d()));
    for (const auto &s : xhat.slices())
        blocks.push_back(two_level_lift(s, shape));
    return BlockDiagonal(std::move(blocks));
}

} // namespace hmc
