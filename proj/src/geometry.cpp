#include "hankelmc/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "hankelmc/fourier.hpp"
#include "hankelmc/linalg.hpp"

namespace hmc {

namespace {

constexpr double kZeroBlock = 1e-12;

CMatrix project_block(const CMatrix &u, const CMatrix &v, const CMatrix &w) {
    if (u.cols() == 0)
        return CMatrix::Zero(w.rows(), w.cols());
    const CMatrix uw = u * (u.adjoint() * w);
    const CMatrix wv = (w * v) * v.adjoint();
    const CMatrix uwv = u * ((u.adjoint() * w * v) * v.adjoint());
    return uw + wv - uwv;
}

void require_layout(const TangentSpace &t, const BlockDiagonal &w, const char *where) {
    if (w.size() != t.blocks() || w.block_rows() != t.n1 || w.block_cols() != t.n2)
        throw DimensionError(std::string(where) + ": block layout differs from tangent space");
}

void require_square(const TangentSpace &t, const char *where) {
    if (t.n1 != t.n2)
        throw DomainError(std::string(where) +
                          ": incoherence needs square Hankel blocks (odd n)");
}

// max over rows of (1/d) sum_a ||e_i^T F_a||^2
double average_row_energy(const std::vector<CMatrix> &factors, Eigen::Index rows) {
    RVector acc = RVector::Zero(rows);
    for (const auto &f : factors)
        if (f.cols() > 0)
            acc += f.rowwise().squaredNorm();
    return acc.maxCoeff() / static_cast<double>(factors.size());
}

double worst_row_energy(const std::vector<CMatrix> &factors) {
    double best = 0.0;
    for (const auto &f : factors)
        if (f.cols() > 0)
            best = std::max(best, f.rowwise().squaredNorm().maxCoeff());
    return best;
}

} // namespace

Eigen::Index TangentSpace::max_rank() const {
    Eigen::Index r = 0;
    for (const auto &u : U)
        r = std::max(r, u.cols());
    return r;
}

Eigen::Index TangentSpace::total_rank() const {
    Eigen::Index r = 0;
    for (const auto &u : U)
        r += u.cols();
    return r;
}

TangentSpace block_svd(const BlockDiagonal &z, double rank_tol) {
    if (!(rank_tol > 0.0))
        throw DomainError("block_svd: rank_tol must be positive");
    TangentSpace t;
    t.n1 = z.block_rows();
    t.n2 = z.block_cols();
    for (const auto &block : z) {
        if (!block.allFinite())
            throw DomainError("block_svd: non-finite entries");
        Svd svd = thin_svd(block);
        Eigen::Index r = 0;
        if (svd.S.size() > 0 && svd.S(0) > kZeroBlock)
            while (r < svd.S.size() && svd.S(r) > rank_tol * svd.S(0))
                ++r;
        t.U.push_back(svd.U.leftCols(r));
        t.V.push_back(svd.V.leftCols(r));
        t.sigma.push_back(svd.S.head(r));
    }
    return t;
}

BlockDiagonal tangent_project(const TangentSpace &t, const BlockDiagonal &w) {
    require_layout(t, w, "tangent_project");
    std::vector<CMatrix> out;
    out.reserve(w.size());
    for (std::size_t a = 0; a < w.size(); ++a)
        out.push_back(project_block(t.U[a], t.V[a], w[a]));
    return BlockDiagonal(std::move(out));
}

BlockDiagonal tangent_complement(const TangentSpace &t, const BlockDiagonal &w) {
    return w - tangent_project(t, w);
}

BlockDiagonal sign_matrix(const TangentSpace &t) {
    std::vector<CMatrix> out;
    out.reserve(t.blocks());
    for (std::size_t a = 0; a < t.blocks(); ++a)
        out.push_back(t.U[a] * t.V[a].adjoint());
    return BlockDiagonal(std::move(out));
}

AverageIncoherence avg_incoherence(const TangentSpace &t) {
    require_square(t, "avg_incoherence");
    AverageIncoherence out;
    out.r = t.max_rank();
    if (out.r == 0)
        throw DomainError("avg_incoherence: all blocks have rank 0");
    out.n = t.n1 + t.n2 - 1;
    const double scale = static_cast<double>(out.n) / static_cast<double>(out.r);
    out.raw_u = average_row_energy(t.U, t.n1);
    out.raw_v = average_row_energy(t.V, t.n2);
    out.mu_u = scale * out.raw_u;
    out.mu_v = scale * out.raw_v;
    out.mu0 = std::max(out.mu_u, out.mu_v);
    return out;
}

WorstIncoherence worst_incoherence(const TangentSpace &t) {
    require_square(t, "worst_incoherence");
    const auto r = t.max_rank();
    if (r == 0)
        throw DomainError("worst_incoherence: all blocks have rank 0");
    WorstIncoherence out;
    out.raw = std::max(worst_row_energy(t.U), worst_row_energy(t.V));
    out.mu1 = static_cast<double>(t.n1 + t.n2 - 1) / static_cast<double>(r) * out.raw;
    return out;
}

IncoherenceConsequences check_incoherence_consequences(const TangentSpace &t, double slack) {
    const AverageIncoherence inc = avg_incoherence(t);
    const HankelShape shape(t.n1, t.n2);
    const auto n = shape.n();
    const auto d = static_cast<Eigen::Index>(t.blocks());
    const double dd = static_cast<double>(d);

    IncoherenceConsequences out;
    out.mu0 = inc.mu0;
    out.slack = slack;
    out.ineq1_bound = inc.mu0 * static_cast<double>(inc.r) / static_cast<double>(n);
    out.ineq2_bound = 2.0 * out.ineq1_bound;

    std::vector<CMatrix> basis;
    basis.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k)
        basis.push_back(g_basis(k, shape));

    for (const auto &gk : basis) {
        double su = 0.0, sv = 0.0;
        for (std::size_t a = 0; a < t.blocks(); ++a) {
            su += (gk.adjoint() * t.U[a]).squaredNorm();
            sv += (gk * t.V[a]).squaredNorm();
        }
        out.ineq1_u = std::max(out.ineq1_u, su / dd);
        out.ineq1_v = std::max(out.ineq1_v, sv / dd);
    }

    const CMatrix f = unitary_dft(d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            double energy = 0.0;
            for (Eigen::Index a = 0; a < d; ++a) {
                const auto ia = static_cast<std::size_t>(a);
                const CMatrix block = f(a, j) * basis[static_cast<std::size_t>(k)];
                energy += project_block(t.U[ia], t.V[ia], block).squaredNorm();
            }
            out.ineq2 = std::max(out.ineq2, energy);
        }

    out.ineq1_holds = std::max(out.ineq1_u, out.ineq1_v) <= out.ineq1_bound + slack;
    out.ineq2_holds = out.ineq2 <= out.ineq2_bound + slack;
    return out;
}

} // namespace hmc
