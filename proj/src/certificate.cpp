#include "hankelmc/certificate.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "hankelmc/fourier.hpp"
#include "hankelmc/hankel.hpp"
#include "hankelmc/rng.hpp"

namespace hmc {

namespace {

constexpr double kTinyNorm = 1e-14;
constexpr double kSpecialEqTol = 1e-12;

HankelShape shape_of(const BlockDiagonal &z) {
    if (z.size() == 0)
        throw DimensionError("block-diagonal argument has no blocks");
    return {z.block_rows(), z.block_cols()};
}

void require_mask(const SamplingMask &mask, std::size_t d, Eigen::Index n, const char *where) {
    if (mask.is_3d() || mask.dims()[0] != static_cast<Eigen::Index>(d) || mask.dims()[1] != n)
        throw DimensionError(std::string(where) + ": mask dims do not match the d x n layout");
}

// the theory assumes square lifts, i.e. odd n
void require_square(const TangentSpace &t, const char *where) {
    if (t.n1 != t.n2)
        throw DomainError(std::string(where) + ": needs square Hankel blocks (odd n)");
}

void require_tangent(const TangentSpace &t, const BlockDiagonal &z, const char *where) {
    if (z.size() != t.blocks() || z.block_rows() != t.n1 || z.block_cols() != t.n2)
        throw DimensionError(std::string(where) + ": block layout differs from tangent space");
}

BlockDiagonal random_block(std::size_t d, Eigen::Index n1, Eigen::Index n2, std::uint64_t seed) {
    Rng rng(seed);
    BlockDiagonal z(d, n1, n2);
    for (auto &b : z)
        for (Eigen::Index k = 0; k < n2; ++k)
            for (Eigen::Index j = 0; j < n1; ++j)
                b(j, k) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return z;
}

bool is_power_of_two(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

} // namespace

double gf_norm(const BlockDiagonal &z) {
    const HankelShape shape = shape_of(z);
    const RVector w = antidiag_weights(shape).cast<double>();
    double acc = 0.0;
    for (const auto &b : z) {
        // <Z_i, G_k> = (H^* Z_i)_k / sqrt(w_k)
        const CVector h = hankel_adjoint(b, shape);
        acc += (h.array().abs2() / w.array().square()).sum();
    }
    return std::sqrt(acc / static_cast<double>(z.size()));
}

double gf_norm_by_basis(const BlockDiagonal &z) {
    const HankelShape shape = shape_of(z);
    const auto d = static_cast<Eigen::Index>(z.size());
    const Eigen::VectorXi w = antidiag_weights(shape);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < shape.n(); ++k)
            acc += std::norm(inner(z, ghat_basis(j, k, d, shape))) /
                   (static_cast<double>(d) * w(k));
    return std::sqrt(acc);
}

double ginf_norm(const BlockDiagonal &z) {
    const HankelShape shape = shape_of(z);
    const double d = static_cast<double>(z.size());
    const RVector w = antidiag_weights(shape).cast<double>();
    const CMatrix coeff = ghat_adjoint(z);
    double best = 0.0;
    for (Eigen::Index k = 0; k < coeff.cols(); ++k)
        best = std::max(best, coeff.col(k).cwiseAbs().maxCoeff() / std::sqrt(d * w(k)));
    return best;
}

BlockDiagonal sampled_projection(const BlockDiagonal &z, const SamplingMask &mask) {
    const HankelShape shape = shape_of(z);
    require_mask(mask, z.size(), shape.n(), "sampled_projection");
    return ghat_lift(project(ghat_adjoint(z), mask), shape);
}

BlockDiagonal deviation_apply(const TangentSpace &t, const SamplingMask &mask, double p,
                              const BlockDiagonal &w) {
    if (!(p > 0.0 && p <= 1.0))
        throw DomainError("deviation_apply: p must lie in (0, 1]");
    require_tangent(t, w, "deviation_apply");
    const BlockDiagonal pt = tangent_project(t, w);
    BlockDiagonal out = sampled_projection(pt, mask);
    out *= cplx(1.0 / p);
    out -= ghat_project(pt);
    return tangent_project(t, out);
}

NormEstimate rip_deviation(const TangentSpace &t, const SamplingMask &mask, double p,
                           const PowerIterationOptions &opts) {
    if (!(p > 0.0 && p <= 1.0))
        throw DomainError("rip_deviation: p must lie in (0, 1]");
    if (!(opts.tol > 0.0) || opts.max_iter < 1)
        throw DomainError("rip_deviation: tol and max_iter must be positive");
    require_square(t, "rip_deviation");
    require_mask(mask, t.blocks(), t.n1 + t.n2 - 1, "rip_deviation");

    NormEstimate est;
    BlockDiagonal v = tangent_project(t, random_block(t.blocks(), t.n1, t.n2, opts.seed));
    double nv = v.norm();
    if (nv < kTinyNorm) {
        // T is trivial
        est.converged = true;
        return est;
    }
    v *= cplx(1.0 / nv);

    double prev = -1.0;
    int calm = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        BlockDiagonal av = deviation_apply(t, mask, p, v);
        const double value = av.norm();
        est.value = value;
        est.iterations = it;
        if (value < kTinyNorm) {
            est.converged = true;
            break;
        }
        if (prev >= 0.0 && std::abs(value - prev) <= opts.tol * value) {
            if (++calm >= 2) {
                est.converged = true;
                break;
            }
        } else {
            calm = 0;
        }
        prev = value;
        av *= cplx(1.0 / value);
        v = std::move(av);
    }
    return est;
}

int GolfingResult::halving_steps() const {
    int count = 0;
    for (std::size_t k = 1; k < residuals.size(); ++k)
        if (residuals[k] <= 0.5 * residuals[k - 1])
            ++count;
    return count;
}

GolfingResult golfing_certificate(const TangentSpace &t, const BlockDiagonal &uv,
                                  const GolfingPartition &partition) {
    require_square(t, "golfing_certificate");
    require_tangent(t, uv, "golfing_certificate");
    if (partition.masks.empty() || !(partition.q > 0.0 && partition.q <= 1.0))
        throw DomainError("golfing_certificate: partition needs masks and q in (0, 1]");
    const auto n = t.n1 + t.n2 - 1;
    for (const auto &m : partition.masks)
        require_mask(m, t.blocks(), n, "golfing_certificate");

    GolfingResult out;
    out.lambda = BlockDiagonal(t.blocks(), t.n1, t.n2);
    out.residuals.push_back((uv - tangent_project(t, out.lambda)).norm());
    for (const auto &mask : partition.masks) {
        const BlockDiagonal g = tangent_project(t, uv - tangent_project(t, out.lambda));
        BlockDiagonal step = sampled_projection(g, mask);
        step *= cplx(1.0 / partition.q);
        step += g - ghat_project(g);
        out.lambda += step;
        out.residuals.push_back((uv - tangent_project(t, out.lambda)).norm());
    }
    return out;
}

CertificateReport verify_certificate(const BlockDiagonal &lambda, const TangentSpace &t,
                                     const SamplingMask &mask, double p,
                                     const PowerIterationOptions &opts) {
    require_square(t, "verify_certificate");
    require_tangent(t, lambda, "verify_certificate");
    CertificateReport rep;
    const auto n = t.n1 + t.n2 - 1;
    rep.fro_bound = 1.0 / static_cast<double>(n);
    rep.fro_gap = (tangent_project(t, lambda) - sign_matrix(t)).norm();
    rep.perp_norm = tangent_complement(t, lambda).spectral_norm();
    rep.omega_residual = (sampled_projection(lambda, mask) - ghat_project(lambda)).norm();
    const NormEstimate rip = rip_deviation(t, mask, p, opts);
    rep.rip_deviation = rip.value;
    rep.rip_converged = rip.converged;
    rep.passed = rep.fro_gap <= rep.fro_bound && rep.perp_norm <= rep.perp_bound &&
                 rep.omega_residual <= rep.omega_tol && rep.rip_deviation <= rep.rip_bound;
    return rep;
}

SpecialCertificate special_dual_certificate(const std::vector<Eigen::Index> &omega,
                                            Eigen::Index d) {
    if (!is_power_of_two(d))
        throw DomainError("special_dual_certificate: d must be a power of two");
    if (omega.size() < 2)
        throw DomainError("special_dual_certificate: |omega| < 2 leaves lambda underdetermined");
    std::set<Eigen::Index> seen;
    for (auto k : omega) {
        if (k < 1 || k > d)
            throw DomainError("special_dual_certificate: omega index out of [1, d]");
        if (!seen.insert(k).second)
            throw DomainError("special_dual_certificate: repeated omega index");
    }

    SpecialCertificate out;
    const double value = std::sqrt(static_cast<double>(d)) / static_cast<double>(omega.size());
    out.lambda = RVector::Zero(d);
    for (auto k : omega)
        out.lambda(k - 1) = value;
    // D_Omega lambda = lambda since lambda vanishes off Omega
    out.transformed = unitary_dft(d) * out.lambda.cast<cplx>();
    out.first_entry_error = std::abs(out.transformed(0) - 1.0);
    out.max_off_entry = d > 1 ? out.transformed.tail(d - 1).cwiseAbs().maxCoeff() : 0.0;

    bool odd = false, even = false;
    for (auto k : omega)
        (k % 2 ? odd : even) = true;
    out.parity_pair = odd && even;
    out.passed = out.first_entry_error <= kSpecialEqTol &&
                 out.max_off_entry < 1.0 - kSpecialEqTol;
    return out;
}

TangentBalance tangent_balance(const TangentSpace &t, const BlockDiagonal &w,
                               const SamplingMask &mask, double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw DomainError("tangent_balance: p must lie in (0, 1]");
    require_tangent(t, w, "tangent_balance");
    TangentBalance out;
    out.tangent_norm = tangent_project(t, w).norm();
    out.bound = 2.0 * std::sqrt(2.0) / p * tangent_complement(t, w).norm();
    out.ratio = out.bound > 0.0 ? out.tangent_norm / out.bound
                                : std::numeric_limits<double>::infinity();
    const double on_omega = sampled_projection(w, mask).norm();
    const double off_hankel = (w - ghat_project(w)).norm();
    out.feasibility_residual = std::hypot(on_omega, off_hankel);
    return out;
}

} // namespace hmc
