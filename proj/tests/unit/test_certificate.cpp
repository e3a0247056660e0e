#include <doctest.h>

#include <cmath>

#include "hankelmc/certificate.hpp"
#include "hankelmc/fourier.hpp"
#include "hankelmc/rng.hpp"
#include "hankelmc/signals.hpp"
#include "oracles.hpp"

using namespace hmc;

namespace {

TangentSpace tangent_of(const CMatrix &x) {
    return block_svd(hankel_blockdiag(x, HankelShape::for_length(x.cols())));
}

} // namespace

TEST_CASE("gf_norm: blockwise and basis formulas agree") {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = static_cast<std::size_t>(1 + rng.uniform_int(0, 4));
        const auto n1 = 1 + rng.uniform_int(0, 4), n2 = 1 + rng.uniform_int(0, 4);
        const BlockDiagonal z = oracle::random_blocks(d, n1, n2, rng);
        const double a = gf_norm(z), b = gf_norm_by_basis(z);
        CHECK(std::abs(a - b) <= 1e-10 * b);
    }
    CHECK(gf_norm(BlockDiagonal(3, 3, 3)) == 0.0);
}

TEST_CASE("gf and ginf norms of basis elements") {
    const Eigen::Index d = 4;
    const HankelShape s{3, 3};
    const auto w = oracle::weights(3, 3);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < s.n(); ++k) {
            const BlockDiagonal b = ghat_basis(j, k, d, s);
            const double expect = 1.0 / std::sqrt(static_cast<double>(d * w[k]));
            CHECK(gf_norm(b) == doctest::Approx(expect).epsilon(1e-12));
            CHECK(ginf_norm(b) == doctest::Approx(expect).epsilon(1e-12));
        }
    CHECK(ginf_norm(BlockDiagonal(2, 3, 3)) == 0.0);
}

TEST_CASE("ginf bound on generated instances") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto inst = gen_spectral_matrix(4, 15, 1 + static_cast<int>(seed % 3), seed);
        const TangentSpace t = tangent_of(inst.X);
        const auto avg = avg_incoherence(t);
        CHECK(ginf_norm(sign_matrix(t)) <=
              avg.mu0 * static_cast<double>(avg.r) / static_cast<double>(avg.n) + 1e-10);
    }
}

TEST_CASE("rip_deviation matches the dense eigenvalue oracle") {
    struct Case {
        Eigen::Index d, n;
        int r;
        double p;
    };
    for (const Case c : {Case{2, 5, 1, 0.6}, Case{1, 9, 2, 0.5}, Case{4, 5, 1, 0.7},
                         Case{2, 7, 2, 0.8}}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto inst = gen_spectral_matrix(c.d, c.n, c.r, seed);
            const TangentSpace t = tangent_of(inst.X);
            const auto mask = bernoulli_mask({c.d, c.n}, c.p, seed + 100);
            PowerIterationOptions opts;
            opts.tol = 1e-10;
            opts.max_iter = 20000;
            opts.seed = seed;
            const NormEstimate est = rip_deviation(t, mask, c.p, opts);
            CHECK(est.converged);
            CHECK(est.value == doctest::Approx(oracle::rip_deviation_dense(t, mask, c.p)).epsilon(1e-6));
        }
    }
}

TEST_CASE("rip_deviation vanishes for the full mask") {
    const auto inst = gen_spectral_matrix(4, 15, 2, 3);
    const NormEstimate est = rip_deviation(tangent_of(inst.X), SamplingMask::full({4, 15}), 1.0);
    CHECK(est.value <= 1e-10);
    CHECK(est.converged);
}

TEST_CASE("golfing with a full partition is exact after one step") {
    const auto inst = gen_spectral_matrix(4, 15, 1, 4);
    const TangentSpace t = tangent_of(inst.X);
    const BlockDiagonal uv = sign_matrix(t);
    const auto part = golfing_partition({4, 15}, 1.0, 5);
    const GolfingResult g = golfing_certificate(t, uv, part);
    CHECK(g.residuals.size() == static_cast<std::size_t>(part.k0 + 1));
    CHECK(g.residuals[1] <= 1e-12);
    CHECK((tangent_project(t, g.lambda) - uv).norm() <= 1e-12);
    const auto rep = verify_certificate(g.lambda, t, SamplingMask::full({4, 15}), 1.0);
    CHECK(rep.passed);
}

TEST_CASE("golfing certificate is supported on the union of the partition") {
    const auto inst = gen_spectral_matrix(4, 15, 1, 6);
    const TangentSpace t = tangent_of(inst.X);
    const auto part = golfing_partition({4, 15}, 0.8, 7);
    const GolfingResult g = golfing_certificate(t, sign_matrix(t), part);
    const SamplingMask omega = part.union_mask();
    CHECK((sampled_projection(g.lambda, omega) - ghat_project(g.lambda)).norm() <= 1e-9);
}

TEST_CASE("golfing residuals halve in most steps when q is large") {
    const auto inst = gen_spectral_matrix(4, 15, 1, 8);
    const TangentSpace t = tangent_of(inst.X);
    const auto part = golfing_partition({4, 15}, 0.99999, 9);
    const GolfingResult g = golfing_certificate(t, sign_matrix(t), part);
    CHECK(g.halving_steps() * 2 > part.k0);
}

TEST_CASE("verify_certificate on trivial certificates") {
    const auto inst = gen_spectral_matrix(4, 15, 2, 10);
    const TangentSpace t = tangent_of(inst.X);
    const BlockDiagonal uv = sign_matrix(t);
    const auto full = SamplingMask::full({4, 15});

    const auto good = verify_certificate(uv, t, full, 1.0);
    CHECK(good.fro_gap <= 1e-12);
    CHECK(good.omega_residual <= 1e-12);
    CHECK(good.perp_norm <= 1e-12);
    CHECK(good.fro_bound == doctest::Approx(1.0 / 15.0));

    const auto bad = verify_certificate(BlockDiagonal(4, 8, 8), t, full, 1.0);
    CHECK_FALSE(bad.passed);
    CHECK(bad.fro_gap == doctest::Approx(std::sqrt(static_cast<double>(t.total_rank()))));
}

TEST_CASE("certificate routines need odd n") {
    const TangentSpace t = tangent_of(gen_special(2, 6));
    CHECK_THROWS_AS(rip_deviation(t, SamplingMask::full({2, 6}), 1.0), DomainError);
}

TEST_CASE("special dual certificate, d = 4") {
    const auto ok = special_dual_certificate({1, 2}, 4);
    CHECK(ok.passed);
    CHECK(ok.parity_pair);
    CHECK(ok.lambda(0) == 1.0);
    CHECK(ok.lambda(1) == 1.0);
    CHECK(ok.lambda(2) == 0.0);
    CHECK(ok.first_entry_error <= 1e-12);
    const double h = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(ok.transformed(0)) == doctest::Approx(1.0));
    CHECK(std::abs(ok.transformed(1)) == doctest::Approx(h));
    CHECK(std::abs(ok.transformed(2)) < 1e-12);
    CHECK(std::abs(ok.transformed(3)) == doctest::Approx(h));

    const auto same = special_dual_certificate({1, 3}, 4);
    CHECK_FALSE(same.passed);
    CHECK_FALSE(same.parity_pair);
    CHECK(std::abs(same.transformed(2)) == doctest::Approx(1.0));

    CHECK_THROWS_AS(special_dual_certificate({5}, 4), DomainError);
    CHECK_THROWS_AS(special_dual_certificate({1, 2}, 6), DomainError);
    CHECK_THROWS_AS(special_dual_certificate({1, 1}, 4), DomainError);
}

TEST_CASE("special dual certificate passes for any mixed-parity pair at d = 16") {
    for (Eigen::Index a = 1; a <= 16; ++a)
        for (Eigen::Index b = a + 1; b <= 16; ++b) {
            const auto c = special_dual_certificate({a, b}, 16);
            if ((a + b) % 2 == 1)
                CHECK(c.passed);
            CHECK(c.first_entry_error <= 1e-12);
        }
}

TEST_CASE("tangent_balance reports the feasibility residual") {
    const auto inst = gen_spectral_matrix(2, 5, 1, 11);
    const TangentSpace t = tangent_of(inst.X);
    const auto mask = bernoulli_mask({2, 5}, 0.5, 12);
    // a feasible perturbation: Hankel blocks of a matrix vanishing on Omega
    Rng rng(13);
    const CMatrix x = oracle::random_matrix(2, 5, rng);
    CMatrix off = x - project(x, mask);
    const BlockDiagonal w = ghat_lift(off, HankelShape::for_length(5));
    const auto tb = tangent_balance(t, w, mask, 0.5);
    CHECK(tb.feasibility_residual <= 1e-12);
    CHECK(tb.tangent_norm >= 0.0);
    CHECK(tb.bound >= 0.0);
}
