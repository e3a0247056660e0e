#include <doctest.h>

#include <cmath>

#include "hankelmc/fourier.hpp"
#include "hankelmc/geometry.hpp"
#include "hankelmc/signals.hpp"
#include "oracles.hpp"

using namespace hmc;

namespace {

TangentSpace special_tangent(Eigen::Index d, Eigen::Index n) {
    return block_svd(hankel_blockdiag(gen_special(d, n), HankelShape::for_length(n)));
}

// Same factors U = V in every block.
TangentSpace uniform_tangent(const CMatrix &u, std::size_t d) {
    TangentSpace t;
    t.n1 = t.n2 = u.rows();
    for (std::size_t a = 0; a < d; ++a) {
        t.U.push_back(u);
        t.V.push_back(u);
        t.sigma.push_back(RVector::Ones(u.cols()));
    }
    return t;
}

} // namespace

TEST_CASE("block_svd ranks") {
    const TangentSpace sp = special_tangent(16, 47);
    CHECK(sp.rank(0) == 1);
    for (std::size_t a = 1; a < 16; ++a)
        CHECK(sp.rank(a) == 0);
    CHECK(std::abs(std::abs(sp.U[0](0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(sp.V[0](0, 0)) - 1.0) < 1e-12);
    CHECK(sp.sigma[0](0) == doctest::Approx(4.0));
    CHECK(sp.max_rank() == 1);
    CHECK(sp.total_rank() == 1);

    const auto inst = gen_spectral_matrix(4, 47, 5, 1);
    const TangentSpace t = block_svd(hankel_blockdiag(inst.X, HankelShape::for_length(47)));
    for (std::size_t a = 0; a < 4; ++a)
        CHECK(t.rank(a) == 5);

    const BlockDiagonal id(std::vector<CMatrix>{CMatrix::Identity(4, 4)});
    CHECK(block_svd(id).rank(0) == 4);
}

TEST_CASE("tangent projector properties") {
    Rng rng(51);
    const auto inst = gen_spectral_matrix(3, 9, 2, 2);
    const TangentSpace t = block_svd(hankel_blockdiag(inst.X, HankelShape::for_length(9)));
    const BlockDiagonal uv = sign_matrix(t);
    CHECK((tangent_project(t, uv) - uv).norm() < 1e-12);

    const BlockDiagonal w = oracle::random_blocks(3, 5, 5, rng);
    const BlockDiagonal pw = tangent_project(t, w);
    CHECK((tangent_project(t, pw) - pw).norm() < 1e-12);
    CHECK(std::abs(inner(pw, tangent_complement(t, w))) < 1e-12);
    CHECK((pw + tangent_complement(t, w) - w).norm() < 1e-13);

    // against the Kronecker-product matrix of the projector
    CVector vw(3 * 25);
    for (int a = 0; a < 3; ++a)
        vw.segment(a * 25, 25) = w[a].reshaped();
    const CVector dense = oracle::tangent_dense(t) * vw;
    for (int a = 0; a < 3; ++a)
        CHECK((dense.segment(a * 25, 25) - pw[a].reshaped()).norm() < 1e-12);
}

TEST_CASE("special matrix incoherence") {
    const Eigen::Index d = 16, n = 47;
    const TangentSpace t = special_tangent(d, n);
    const auto avg = avg_incoherence(t);
    CHECK(avg.raw_u == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(avg.raw_v == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(avg.mu0 == doctest::Approx(47.0 / 16.0).epsilon(1e-12));
    CHECK(worst_incoherence(t).raw == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(worst_incoherence(t).mu1 == doctest::Approx(47.0).epsilon(1e-12));

    const auto cons = check_incoherence_consequences(t);
    CHECK(cons.holds());
    CHECK(cons.mu0 == doctest::Approx(avg.mu0));
}

TEST_CASE("d = 1, U = V = e1 by hand") {
    const Eigen::Index n = 7, n1 = 4;
    const TangentSpace t = uniform_tangent(CMatrix::Identity(n1, 1), 1);
    const auto avg = avg_incoherence(t);
    CHECK(avg.raw_u == 1.0);
    CHECK(avg.mu0 == doctest::Approx(static_cast<double>(n)));
    const auto cons = check_incoherence_consequences(t);
    // G_1 = e1 e1^T lies in T, so the second quantity reaches 1
    CHECK(cons.ineq2 == doctest::Approx(1.0));
    CHECK(cons.ineq2_bound == doctest::Approx(2.0));
    CHECK(cons.holds());
}

TEST_CASE("DFT-column factors have flat incoherence") {
    const Eigen::Index n1 = 8, n = 15;
    const int r = 3;
    const CMatrix u = oracle::dft(n1).leftCols(r);
    const TangentSpace t = uniform_tangent(u, 4);
    const auto avg = avg_incoherence(t);
    CHECK(avg.raw_u == doctest::Approx(static_cast<double>(r) / n1).epsilon(1e-12));
    CHECK(avg.mu0 == doctest::Approx(static_cast<double>(n) / n1).epsilon(1e-12));
    CHECK(worst_incoherence(t).mu1 == doctest::Approx(avg.mu0).epsilon(1e-12));
}

TEST_CASE("mu1 >= mu0 and the consequences hold on random instances") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int r = 1 + static_cast<int>(seed % 4);
        const auto inst = gen_spectral_matrix(4, 15, r, seed);
        const TangentSpace t = block_svd(hankel_blockdiag(inst.X, HankelShape::for_length(15)));
        CHECK(worst_incoherence(t).mu1 >= avg_incoherence(t).mu0 - 1e-12);
        CHECK(check_incoherence_consequences(t).holds());
    }
}

TEST_CASE("incoherence needs square blocks and nonzero rank") {
    const TangentSpace even = block_svd(hankel_blockdiag(gen_special(2, 6), HankelShape::for_length(6)));
    CHECK_THROWS_AS(avg_incoherence(even), DomainError);
    const TangentSpace zero = block_svd(BlockDiagonal(2, 3, 3));
    CHECK_THROWS_AS(avg_incoherence(zero), DomainError);
    CHECK_THROWS_AS(block_svd(BlockDiagonal(2, 3, 3), 0.0), DomainError);
}
