#include "hankelmc/types.hpp"

#include <cmath>

#include "hankelmc/linalg.hpp"

namespace hmc {

Array3::Array3(std::vector<CMatrix> slices) : slices_(std::move(slices)) {
    for (const auto &s : slices_)
        if (s.rows() != n() || s.cols() != this->s())
            throw DimensionError("Array3: frontal slices differ in size");
}

double Array3::squared_norm() const {
    double acc = 0.0;
    for (const auto &s : slices_)
        acc += s.squaredNorm();
    return acc;
}

double Array3::norm() const { return std::sqrt(squared_norm()); }

Array3 &Array3::operator+=(const Array3 &o) {
    if (o.n() != n() || o.s() != s() || o.d() != d())
        throw DimensionError("Array3 +=: dimension mismatch");
    for (std::size_t i = 0; i < slices_.size(); ++i)
        slices_[i] += o.slices_[i];
    return *this;
}

Array3 &Array3::operator-=(const Array3 &o) {
    if (o.n() != n() || o.s() != s() || o.d() != d())
        throw DimensionError("Array3 -=: dimension mismatch");
    for (std::size_t i = 0; i < slices_.size(); ++i)
        slices_[i] -= o.slices_[i];
    return *this;
}

Array3 &Array3::operator*=(double a) {
    for (auto &s : slices_)
        s *= a;
    return *this;
}

Array3 operator+(Array3 a, const Array3 &b) { return a += b; }
Array3 operator-(Array3 a, const Array3 &b) { return a -= b; }
Array3 operator*(double s, Array3 a) { return a *= s; }

BlockDiagonal::BlockDiagonal(std::vector<CMatrix> blocks) : blocks_(std::move(blocks)) {
    for (const auto &b : blocks_)
        if (b.rows() != block_rows() || b.cols() != block_cols())
            throw DimensionError("BlockDiagonal: blocks must share one shape");
}

bool BlockDiagonal::same_layout(const BlockDiagonal &o) const {
    return o.size() == size() && o.block_rows() == block_rows() &&
           o.block_cols() == block_cols();
}

void BlockDiagonal::require_same_layout(const BlockDiagonal &o, const char *where) const {
    if (!same_layout(o))
        throw DimensionError(std::string(where) + ": block layouts differ");
}

double BlockDiagonal::squared_norm() const {
    double acc = 0.0;
    for (const auto &b : blocks_)
        acc += b.squaredNorm();
    return acc;
}

double BlockDiagonal::norm() const { return std::sqrt(squared_norm()); }

double BlockDiagonal::spectral_norm() const {
    double best = 0.0;
    for (const auto &b : blocks_)
        best = std::max(best, hmc::spectral_norm(b));
    return best;
}

double BlockDiagonal::nuclear_norm() const {
    double acc = 0.0;
    for (const auto &b : blocks_)
        acc += hmc::nuclear_norm(b);
    return acc;
}

CMatrix BlockDiagonal::to_dense() const {
    const auto r = block_rows(), c = block_cols();
    const auto d = static_cast<Eigen::Index>(size());
    CMatrix out = CMatrix::Zero(d * r, d * c);
    for (Eigen::Index i = 0; i < d; ++i)
        out.block(i * r, i * c, r, c) = blocks_[static_cast<std::size_t>(i)];
    return out;
}

BlockDiagonal &BlockDiagonal::operator+=(const BlockDiagonal &o) {
    require_same_layout(o, "BlockDiagonal +=");
    for (std::size_t i = 0; i < size(); ++i)
        blocks_[i] += o.blocks_[i];
    return *this;
}

BlockDiagonal &BlockDiagonal::operator-=(const BlockDiagonal &o) {
    require_same_layout(o, "BlockDiagonal -=");
    for (std::size_t i = 0; i < size(); ++i)
        blocks_[i] -= o.blocks_[i];
    return *this;
}

BlockDiagonal &BlockDiagonal::operator*=(cplx a) {
    for (auto &b : blocks_)
        b *= a;
    return *this;
}

BlockDiagonal operator+(BlockDiagonal a, const BlockDiagonal &b) { return a += b; }
BlockDiagonal operator-(BlockDiagonal a, const BlockDiagonal &b) { return a -= b; }
BlockDiagonal operator*(cplx s, BlockDiagonal a) { return a *= s; }

cplx inner(const BlockDiagonal &a, const BlockDiagonal &b) {
    a.require_same_layout(b, "inner");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += inner(a[i], b[i]);
    return acc;
}

} // namespace hmc
