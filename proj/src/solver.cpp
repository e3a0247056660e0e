#include "hankelmc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hankelmc/fourier.hpp"
#include "hankelmc/linalg.hpp"

namespace hmc {

void SolverConfig::validate() const {
    if (!(rho > 0.0) || !(tol_primal > 0.0) || !(tol_dual > 0.0) ||
        !(success_threshold > 0.0))
        throw DomainError("SolverConfig: rho, tolerances and threshold must be positive");
    if (max_iter < 1)
        throw DomainError("SolverConfig: max_iter must be at least 1");
}

CMatrix svt(const CMatrix &m, double tau) {
    if (!(tau >= 0.0))
        throw DomainError("svt: tau must be nonnegative");
    if (!m.allFinite())
        throw DomainError("svt: non-finite input");
    if (m.size() == 0)
        return m;
    // eigenpairs of the smaller Gram matrix; only sigma > tau >= 0 survive, so
    // the squared spectrum loses nothing that matters here
    const bool tall = m.rows() >= m.cols();
    const Eigen::Index side = std::min(m.rows(), m.cols());
    CMatrix gram = CMatrix::Zero(side, side);
    if (tall)
        gram.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint());
    else
        gram.selfadjointView<Eigen::Lower>().rankUpdate(m);
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
    if (eig.info() != Eigen::Success) {
        const Svd svd = thin_svd(m);
        Eigen::Index keep = 0;
        while (keep < svd.S.size() && svd.S(keep) > tau)
            ++keep;
        const RVector shrunk = svd.S.head(keep).array() - tau;
        return svd.U.leftCols(keep) * shrunk.cast<cplx>().asDiagonal() *
               svd.V.leftCols(keep).adjoint();
    }
    const RVector &ev = eig.eigenvalues(); // ascending
    const auto n = ev.size();
    Eigen::Index keep = 0;
    while (keep < n && ev(n - 1 - keep) > tau * tau)
        ++keep;
    if (keep == 0)
        return CMatrix::Zero(m.rows(), m.cols());
    const CMatrix basis = eig.eigenvectors().rightCols(keep);
    const RVector scale =
        (1.0 - tau / ev.tail(keep).array().sqrt()).matrix();
    if (tall)
        return (m * basis) * scale.cast<cplx>().asDiagonal() * basis.adjoint();
    return basis * scale.cast<cplx>().asDiagonal() * (basis.adjoint() * m);
}

double relative_error(const CMatrix &x, const CMatrix &reference) {
    if (x.rows() != reference.rows() || x.cols() != reference.cols())
        throw DimensionError("relative_error: dimension mismatch");
    const double ref = reference.norm();
    if (ref == 0.0)
        throw DomainError("relative_error: reference has zero norm");
    return (x - reference).norm() / ref;
}

double relative_error(const Array3 &x, const Array3 &reference) {
    if (x.n() != reference.n() || x.s() != reference.s() || x.d() != reference.d())
        throw DimensionError("relative_error: dimension mismatch");
    const double ref = reference.norm();
    if (ref == 0.0)
        throw DomainError("relative_error: reference has zero norm");
    return (x - reference).norm() / ref;
}

namespace {

// Matrix completion over d x n: rows of F X lifted by H.
class MatrixProblem {
  public:
    using Field = CMatrix;

    MatrixProblem(const CMatrix &observed, const SamplingMask &mask, const HankelShape &shape)
        : observed_(observed), mask_(mask), shape_(shape),
          f_(unitary_dft(observed.rows())), fh_(f_.adjoint()),
          w_(antidiag_weights(shape).cast<double>()) {
        if (observed.cols() != shape.n())
            throw DimensionError("admm_complete: observed has " +
                                 std::to_string(observed.cols()) + " columns, shape needs " +
                                 std::to_string(shape.n()));
        if (mask.is_3d() || mask.dims()[0] != observed.rows() ||
            mask.dims()[1] != observed.cols())
            throw DimensionError("admm_complete: mask dims differ from observed");
    }

    CMatrix initial() const { return project(observed_, mask_); }

    bool fully_observed() const { return mask_.count() == mask_.cells(); }

    void lift(const CMatrix &x, std::vector<CMatrix> &out) const {
        const CMatrix y = f_ * x;
        out.resize(static_cast<std::size_t>(y.rows()));
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
            CMatrix &m = out[static_cast<std::size_t>(i)];
            m.resize(shape_.n1, shape_.n2);
            for (Eigen::Index k = 0; k < shape_.n2; ++k)
                m.col(k) = y.row(i).segment(k, shape_.n1).transpose();
        }
    }

    CMatrix x_step(const std::vector<CMatrix> &targets) const {
        const auto d = observed_.rows();
        if (static_cast<Eigen::Index>(targets.size()) != d)
            throw DimensionError("x_step: need one target block per row");
        CMatrix c = CMatrix::Zero(d, shape_.n());
        for (Eigen::Index i = 0; i < d; ++i) {
            const CMatrix &t = targets[static_cast<std::size_t>(i)];
            if (t.rows() != shape_.n1 || t.cols() != shape_.n2)
                throw DimensionError("x_step: target block is not n1 x n2");
            for (Eigen::Index k = 0; k < shape_.n2; ++k)
                c.row(i).segment(k, shape_.n1) += t.col(k).transpose();
        }
        CMatrix x = fh_ * c;
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index k = 0; k < shape_.n(); ++k)
                x(i, k) = mask_.observed(i, k) ? observed_(i, k) : x(i, k) / w_(k);
        return x;
    }

  private:
    const CMatrix &observed_;
    const SamplingMask &mask_;
    HankelShape shape_;
    CMatrix f_, fh_;
    RVector w_;
};

// Array completion over n x s x d: tube DFT, two-level lift per frontal slice.
class ArrayProblem {
  public:
    using Field = Array3;

    ArrayProblem(const Array3 &observed, const SamplingMask &mask, const TwoLevelShape &shape)
        : observed_(observed), mask_(mask), shape_(shape),
          w_(two_level_weights(shape).cast<double>()) {
        if (observed.n() != shape.n() || observed.s() != shape.s() || observed.d() < 1)
            throw DimensionError("admm_complete_3d: observed is not (L1+K1-1) x (L2+K2-1) x d");
        if (!mask.is_3d() || mask.dims()[0] != observed.n() ||
            mask.dims()[1] != observed.s() || mask.dims()[2] != observed.d())
            throw DimensionError("admm_complete_3d: mask dims differ from observed");
    }

    Array3 initial() const { return project(observed_, mask_); }

    bool fully_observed() const { return mask_.count() == mask_.cells(); }

    void lift(const Array3 &x, std::vector<CMatrix> &out) const {
        const Array3 xhat = tube_dft(x);
        out.resize(xhat.slices().size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = two_level_lift(xhat.slice(static_cast<Eigen::Index>(i)), shape_);
    }

    Array3 x_step(const std::vector<CMatrix> &targets) const {
        std::vector<CMatrix> c;
        c.reserve(targets.size());
        for (const auto &t : targets)
            c.push_back(two_level_adjoint(t, shape_));
        Array3 x = inverse_tube_dft(Array3(std::move(c)));
        for (Eigen::Index i = 0; i < x.d(); ++i)
            for (Eigen::Index j = 0; j < x.n(); ++j)
                for (Eigen::Index k = 0; k < x.s(); ++k)
                    x(j, k, i) = mask_.observed(j, k, i) ? observed_(j, k, i)
                                                        : x(j, k, i) / w_(j, k);
        return x;
    }

  private:
    const Array3 &observed_;
    const SamplingMask &mask_;
    TwoLevelShape shape_;
    Eigen::MatrixXd w_;
};

double squared_norm(const std::vector<CMatrix> &blocks) {
    double acc = 0.0;
    for (const auto &b : blocks)
        acc += b.squaredNorm();
    return acc;
}

double objective_of(const std::vector<CMatrix> &lifted) {
    double acc = 0.0;
    for (const auto &b : lifted)
        acc += nuclear_norm(b);
    return acc;
}

template <class Problem>
SolveResult<typename Problem::Field> run_admm(const Problem &problem, const SolverConfig &cfg,
                                              const typename Problem::Field *truth) {
    cfg.validate();
    SolveResult<typename Problem::Field> result;
    result.X = problem.initial();
    std::vector<CMatrix> lifted;
    problem.lift(result.X, lifted);

    if (problem.fully_observed()) {
        // the constraint pins every entry; the feasible set is a single point
        result.iterations = 1;
        result.converged = true;
    } else {
        std::vector<CMatrix> z = lifted;
        std::vector<CMatrix> lambda;
        lambda.reserve(z.size());
        for (const auto &b : z)
            lambda.push_back(CMatrix::Zero(b.rows(), b.cols()));
        std::vector<CMatrix> targets(z.size());
        const double tau = 1.0 / cfg.rho;

        for (int it = 1; it <= cfg.max_iter; ++it) {
            // blocks are independent and written to disjoint slots
            double dz2 = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                CMatrix next = svt(lifted[i] + lambda[i], tau);
                dz2 += (next - z[i]).squaredNorm();
                z[i] = std::move(next);
                targets[i].noalias() = z[i] - lambda[i];
            }
            result.X = problem.x_step(targets);
            problem.lift(result.X, lifted);

            double r2 = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                const CMatrix gap = lifted[i] - z[i];
                r2 += gap.squaredNorm();
                lambda[i] += gap;
            }
            result.iterations = it;
            result.primal_residual = std::sqrt(r2) / std::max(std::sqrt(squared_norm(z)), 1.0);
            result.dual_residual =
                cfg.rho * std::sqrt(dz2) / std::max(std::sqrt(squared_norm(lambda)), 1.0);
            if (cfg.record_objective)
                result.objective.push_back(objective_of(lifted));
            if (result.primal_residual <= cfg.tol_primal && result.dual_residual <= cfg.tol_dual) {
                result.converged = true;
                break;
            }
        }
    }
    if (cfg.record_objective && result.objective.empty())
        result.objective.push_back(objective_of(lifted));
    if (truth)
        result.relative_error = relative_error(result.X, *truth);
    return result;
}

} // namespace

SolveResult<CMatrix> admm_complete(const CMatrix &observed, const SamplingMask &mask,
                                   const HankelShape &shape, const SolverConfig &cfg,
                                   const CMatrix *truth) {
    return run_admm(MatrixProblem(observed, mask, shape), cfg, truth);
}

SolveResult<Array3> admm_complete_3d(const Array3 &observed, const SamplingMask &mask,
                                     const TwoLevelShape &shape, const SolverConfig &cfg,
                                     const Array3 *truth) {
    return run_admm(ArrayProblem(observed, mask, shape), cfg, truth);
}

CMatrix exact_x_step(const CMatrix &observed, const SamplingMask &mask,
                     const HankelShape &shape, const std::vector<CMatrix> &targets) {
    return MatrixProblem(observed, mask, shape).x_step(targets);
}

double hankel_objective(const CMatrix &x, const HankelShape &shape) {
    return hankel_blockdiag(x, shape).nuclear_norm();
}

} // namespace hmc
