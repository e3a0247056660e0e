#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hmc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using IMatrix = Eigen::MatrixXi;

// Index convention: the library is 0-based throughout. Documentation and all
// on-disk formats are 1-based; entry (j, k) in a file maps to (j-1, k-1) here.

/// Thrown when operand shapes do not agree.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an argument lies outside the operation's domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Malformed input file; carries the 1-based line number where parsing failed.
struct ParseError : std::runtime_error {
    ParseError(const std::string &what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line(line) {}
    int line;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Frobenius inner product <A, B> = trace(A B^H).
inline cplx inner(const CMatrix &a, const CMatrix &b) {
    return a.cwiseProduct(b.conjugate()).sum();
}

/// n x s x d complex array stored as d frontal slices of size n x s.
class Array3 {
  public:
    Array3() = default;
    Array3(Eigen::Index n, Eigen::Index s, Eigen::Index d)
        : slices_(static_cast<std::size_t>(d), CMatrix::Zero(n, s)) {}
    explicit Array3(std::vector<CMatrix> slices);

    Eigen::Index n() const { return slices_.empty() ? 0 : slices_.front().rows(); }
    Eigen::Index s() const { return slices_.empty() ? 0 : slices_.front().cols(); }
    Eigen::Index d() const { return static_cast<Eigen::Index>(slices_.size()); }

    CMatrix &slice(Eigen::Index i) { return slices_.at(static_cast<std::size_t>(i)); }
    const CMatrix &slice(Eigen::Index i) const {
        return slices_.at(static_cast<std::size_t>(i));
    }
    cplx &operator()(Eigen::Index j, Eigen::Index k, Eigen::Index i) {
        return slices_[static_cast<std::size_t>(i)](j, k);
    }
    cplx operator()(Eigen::Index j, Eigen::Index k, Eigen::Index i) const {
        return slices_[static_cast<std::size_t>(i)](j, k);
    }

    const std::vector<CMatrix> &slices() const { return slices_; }

    double squared_norm() const;
    double norm() const;

    Array3 &operator+=(const Array3 &o);
    Array3 &operator-=(const Array3 &o);
    Array3 &operator*=(double a);

  private:
    std::vector<CMatrix> slices_;
};

Array3 operator+(Array3 a, const Array3 &b);
Array3 operator-(Array3 a, const Array3 &b);
Array3 operator*(double s, Array3 a);

/// Ordered list of equally sized complex blocks, standing for the
/// block-diagonal matrix diag(B_1, ..., B_d). Never materialized densely.
class BlockDiagonal {
  public:
    BlockDiagonal() = default;
    BlockDiagonal(std::size_t count, Eigen::Index rows, Eigen::Index cols)
        : blocks_(count, CMatrix::Zero(rows, cols)) {}
    explicit BlockDiagonal(std::vector<CMatrix> blocks);

    std::size_t size() const { return blocks_.size(); }
    Eigen::Index block_rows() const { return blocks_.empty() ? 0 : blocks_.front().rows(); }
    Eigen::Index block_cols() const { return blocks_.empty() ? 0 : blocks_.front().cols(); }

    CMatrix &operator[](std::size_t i) { return blocks_[i]; }
    const CMatrix &operator[](std::size_t i) const { return blocks_[i]; }
    const std::vector<CMatrix> &blocks() const { return blocks_; }

    auto begin() { return blocks_.begin(); }
    auto end() { return blocks_.end(); }
    auto begin() const { return blocks_.begin(); }
    auto end() const { return blocks_.end(); }

    bool same_layout(const BlockDiagonal &o) const;
    /// Throws DimensionError unless `o` has the same block count and sizes.
    void require_same_layout(const BlockDiagonal &o, const char *where) const;

    double squared_norm() const;
    double norm() const;
    /// Largest block spectral norm, i.e. the spectral norm of the whole matrix.
    double spectral_norm() const;
    /// Sum of block nuclear norms.
    double nuclear_norm() const;

    /// Dense (d*rows) x (d*cols) matrix; intended for small oracles only.
    CMatrix to_dense() const;

    BlockDiagonal &operator+=(const BlockDiagonal &o);
    BlockDiagonal &operator-=(const BlockDiagonal &o);
    BlockDiagonal &operator*=(cplx a);

  private:
    std::vector<CMatrix> blocks_;
};

BlockDiagonal operator+(BlockDiagonal a, const BlockDiagonal &b);
BlockDiagonal operator-(BlockDiagonal a, const BlockDiagonal &b);
BlockDiagonal operator*(cplx s, BlockDiagonal a);

cplx inner(const BlockDiagonal &a, const BlockDiagonal &b);

} // namespace hmc
