#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

CVector random_vector(Eigen::Index n, hmc::Rng &rng) {
    CVector x(n);
    for (Eigen::Index i = 0; i < n; ++i)
        x(i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return x;
}

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, hmc::Rng &rng) {
    CMatrix m(rows, cols);
    for (Eigen::Index k = 0; k < cols; ++k)
        for (Eigen::Index j = 0; j < rows; ++j)
            m(j, k) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

hmc::BlockDiagonal random_blocks(std::size_t d, Eigen::Index n1, Eigen::Index n2,
                                 hmc::Rng &rng) {
    std::vector<CMatrix> blocks;
    for (std::size_t i = 0; i < d; ++i)
        blocks.push_back(random_matrix(n1, n2, rng));
    return hmc::BlockDiagonal(std::move(blocks));
}

CMatrix hankel(const CVector &x, Eigen::Index n1, Eigen::Index n2) {
    CMatrix m(n1, n2);
    for (Eigen::Index j = 0; j < n1; ++j)
        for (Eigen::Index k = 0; k < n2; ++k)
            m(j, k) = x(j + k);
    return m;
}

std::vector<int> weights(Eigen::Index n1, Eigen::Index n2) {
    std::vector<int> w(static_cast<std::size_t>(n1 + n2 - 1), 0);
    for (Eigen::Index j = 0; j < n1; ++j)
        for (Eigen::Index k = 0; k < n2; ++k)
            ++w[static_cast<std::size_t>(j + k)];
    return w;
}

CMatrix dft(Eigen::Index d) {
    CMatrix f(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k)
            f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                 -2.0 * std::numbers::pi * static_cast<double>(j * k) /
                                     static_cast<double>(d));
    return f;
}

CMatrix ghat_dense(Eigen::Index d, const hmc::HankelShape &shape) {
    const Eigen::Index n1 = shape.n1, n2 = shape.n2, n = shape.n();
    const auto w = weights(n1, n2);
    const CMatrix f = dft(d);
    const Eigen::Index bsz = n1 * n2;
    CMatrix g = CMatrix::Zero(d * bsz, d * n);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            const Eigen::Index col = k * d + j; // column-major vec of d x n
            const double s = 1.0 / std::sqrt(static_cast<double>(w[static_cast<std::size_t>(k)]));
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index a = 0; a < n1; ++a) {
                    const Eigen::Index b = k - a;
                    if (b < 0 || b >= n2)
                        continue;
                    g(i * bsz + b * n1 + a, col) = f(i, j) * s;
                }
        }
    return g;
}

CMatrix tangent_dense(const hmc::TangentSpace &t) {
    const Eigen::Index n1 = t.n1, n2 = t.n2, bsz = n1 * n2;
    const auto d = static_cast<Eigen::Index>(t.blocks());
    CMatrix p = CMatrix::Zero(d * bsz, d * bsz);
    const CMatrix i1 = CMatrix::Identity(n1, n1);
    for (Eigen::Index a = 0; a < d; ++a) {
        const auto &u = t.U[static_cast<std::size_t>(a)];
        const auto &v = t.V[static_cast<std::size_t>(a)];
        const CMatrix pu = u * u.adjoint();
        const CMatrix pvt = (v * v.adjoint()).transpose();
        // vec(A W B) = (B^T kron A) vec(W)
        CMatrix blk = CMatrix::Zero(bsz, bsz);
        for (Eigen::Index r = 0; r < n2; ++r)
            for (Eigen::Index c = 0; c < n2; ++c)
                blk.block(r * n1, c * n1, n1, n1) =
                    (r == c ? pu : CMatrix::Zero(n1, n1)) + pvt(r, c) * i1 - pvt(r, c) * pu;
        p.block(a * bsz, a * bsz, bsz, bsz) = blk;
    }
    return p;
}

CMatrix mask_dense(const hmc::SamplingMask &mask) {
    const Eigen::Index d = mask.dims()[0], n = mask.dims()[1];
    CMatrix m = CMatrix::Zero(d * n, d * n);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            if (mask.observed(i, k))
                m(k * d + i, k * d + i) = 1.0;
    return m;
}

double rip_deviation_dense(const hmc::TangentSpace &t, const hmc::SamplingMask &mask,
                           double p) {
    const auto d = static_cast<Eigen::Index>(t.blocks());
    const CMatrix g = ghat_dense(d, hmc::HankelShape(t.n1, t.n2));
    const CMatrix pt = tangent_dense(t);
    const CMatrix a =
        pt * ((1.0 / p) * g * mask_dense(mask) * g.adjoint() - g * g.adjoint()) * pt;
    const CMatrix herm = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

CMatrix x_step_dense(const CMatrix &observed, const hmc::SamplingMask &mask,
                     const hmc::HankelShape &shape, const std::vector<CMatrix> &targets) {
    const Eigen::Index d = observed.rows(), n = observed.cols();
    const Eigen::Index n1 = shape.n1, n2 = shape.n2, bsz = n1 * n2;
    // the unnormalized lift X -> (hankel(row i of F X))_i as a dense matrix
    const CMatrix f = dft(d);
    CMatrix h = CMatrix::Zero(d * bsz, d * n);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index a = 0; a < n1; ++a) {
                    const Eigen::Index b = k - a;
                    if (b >= 0 && b < n2)
                        h(i * bsz + b * n1 + a, k * d + j) = f(i, j);
                }
    CVector rhs(d * bsz);
    for (Eigen::Index i = 0; i < d; ++i)
        rhs.segment(i * bsz, bsz) = targets[static_cast<std::size_t>(i)].reshaped();

    std::vector<Eigen::Index> free_cols;
    CVector fixed = CVector::Zero(d * n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index j = 0; j < d; ++j) {
            if (mask.observed(j, k))
                fixed(k * d + j) = observed(j, k);
            else
                free_cols.push_back(k * d + j);
        }
    CMatrix a(h.rows(), static_cast<Eigen::Index>(free_cols.size()));
    for (std::size_t c = 0; c < free_cols.size(); ++c)
        a.col(static_cast<Eigen::Index>(c)) = h.col(free_cols[c]);
    const CVector sol = a.colPivHouseholderQr().solve(rhs - h * fixed);

    CVector x = fixed;
    for (std::size_t c = 0; c < free_cols.size(); ++c)
        x(free_cols[c]) = sol(static_cast<Eigen::Index>(c));
    return x.reshaped(d, n);
}

double rel(const CMatrix &a, const CMatrix &b) {
    return (a - b).norm() / std::max(b.norm(), 1e-300);
}

} // namespace oracle
