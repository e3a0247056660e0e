#include <doctest.h>

#include <cmath>

#include "hankelmc/sampling.hpp"
#include "oracles.hpp"

using namespace hmc;

TEST_CASE("bernoulli_mask extremes") {
    CHECK(bernoulli_mask({16, 47}, 1.0, 3).count() == 16u * 47u);
    CHECK(bernoulli_mask({16, 47}, 0.0, 3).count() == 0u);
    CHECK(bernoulli_mask({9, 9, 16}, 1.0, 3).count() == 9u * 9u * 16u);
    CHECK_THROWS_AS(bernoulli_mask({4, 4}, 1.5, 0), DomainError);
    CHECK_THROWS_AS(bernoulli_mask({4}, 0.5, 0), DimensionError);
}

TEST_CASE("bernoulli_mask mean count over 1000 seeds") {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
        total += static_cast<double>(bernoulli_mask({16, 47}, 0.5, seed).count());
    CHECK(std::abs(total / 1000.0 - 376.0) <= 20.0);
}

TEST_CASE("bernoulli_mask is a pure function of its arguments") {
    CHECK(bernoulli_mask({8, 15}, 0.4, 99) == bernoulli_mask({8, 15}, 0.4, 99));
    CHECK_FALSE(bernoulli_mask({8, 15}, 0.4, 99) == bernoulli_mask({8, 15}, 0.4, 100));
    const auto m = bernoulli_mask({8, 15}, 0.4, 99);
    CHECK(m.p() == 0.4);
    CHECK(m.seed() == 99u);
}

TEST_CASE("golfing_partition parameters") {
    const auto part = golfing_partition({16, 47}, 0.5, 7);
    CHECK(part.k0 == 14);
    CHECK(part.k0 == static_cast<int>(std::ceil(2.0 * std::log(752.0))));
    CHECK(part.q == doctest::Approx(1.0 - std::pow(0.5, 1.0 / 14.0)).epsilon(1e-14));
    CHECK(part.q == doctest::Approx(0.04830).epsilon(1e-3));
    CHECK(part.masks.size() == 14u);

    const auto full = golfing_partition({4, 15}, 1.0, 7);
    CHECK(full.q == 1.0);
    for (const auto &m : full.masks)
        CHECK(m.count() == 60u);
}

TEST_CASE("golfing_partition union is Bernoulli(p)") {
    const double p = 0.3;
    const auto part = golfing_partition({100, 100}, p, 5);
    const double rate = static_cast<double>(part.union_mask().count()) / 1e4;
    CHECK(std::abs(rate - p) <= 3.0 * std::sqrt(p * (1 - p) / 1e4));
}

TEST_CASE("project") {
    Rng rng(31);
    const CMatrix x = oracle::random_matrix(4, 7, rng);
    CHECK(project(x, SamplingMask::full({4, 7})) == x);
    CHECK(project(x, SamplingMask({4, 7})).isZero(0.0));
    const auto m = bernoulli_mask({4, 7}, 0.5, 1);
    const CMatrix px = project(x, m);
    CHECK(project(px, m) == px);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index k = 0; k < 7; ++k)
            CHECK(px(i, k) == (m.observed(i, k) ? x(i, k) : cplx(0.0)));
    CHECK_THROWS_AS(project(x, SamplingMask({7, 4})), DimensionError);

    Array3 a(2, 3, 4);
    a(1, 2, 3) = 5.0;
    a(0, 0, 0) = 1.0;
    SamplingMask m3({2, 3, 4});
    m3.set(Eigen::Index{1}, Eigen::Index{2}, Eigen::Index{3});
    const Array3 pa = project(a, m3);
    CHECK(pa(1, 2, 3) == cplx(5.0));
    CHECK(pa(0, 0, 0) == cplx(0.0));
}

TEST_CASE("mask indices are 0-based and row-major") {
    SamplingMask m({3, 4});
    m.set(2, 1);
    m.set(0, 3);
    const auto idx = m.indices();
    REQUIRE(idx.size() == 2u);
    CHECK(idx[0][0] == 0);
    CHECK(idx[0][1] == 3);
    CHECK(idx[1][0] == 2);
    CHECK(idx[1][1] == 1);
}
