#include "hankelmc/signals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hankelmc/fourier.hpp"
#include "hankelmc/hankel.hpp"
#include "hankelmc/linalg.hpp"
#include "hankelmc/rng.hpp"

namespace hmc {

namespace {

constexpr int kMaxAttempts = 32;

double circular_gap(double a, double b) {
    const double g = std::abs(a - b);
    return std::min(g, 1.0 - g);
}

cplx draw_amplitude(Rng &rng, SpectralSpec &spec) {
    const double psi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double c = rng.uniform();
    spec.psi.push_back(psi);
    spec.c.push_back(c);
    const cplx a = std::polar(1.0 + std::pow(10.0, 0.5 * c), psi);
    spec.amplitude.push_back(a);
    return a;
}

SpectralSpec draw_1d(int r, std::uint64_t seed, int attempt) {
    SpectralSpec spec;
    spec.r = r;
    spec.seed = seed;
    spec.attempt = attempt;
    Rng rng(seed);
    while (static_cast<int>(spec.f1.size()) < r) {
        const double f = rng.uniform();
        bool clash = false;
        for (double g : spec.f1)
            clash = clash || circular_gap(f, g) < kFrequencyGap;
        if (!clash)
            spec.f1.push_back(f);
    }
    for (int k = 0; k < r; ++k)
        draw_amplitude(rng, spec);
    return spec;
}

SpectralSpec draw_2d(int r, std::uint64_t seed, int attempt) {
    SpectralSpec spec;
    spec.r = r;
    spec.seed = seed;
    spec.attempt = attempt;
    Rng rng(seed);
    while (static_cast<int>(spec.f1.size()) < r) {
        const double a = rng.uniform();
        const double b = rng.uniform();
        bool clash = false;
        for (std::size_t k = 0; k < spec.f1.size(); ++k)
            clash = clash || std::max(circular_gap(a, spec.f1[k]),
                                      circular_gap(b, spec.f2[k])) < kFrequencyGap;
        if (!clash) {
            spec.f1.push_back(a);
            spec.f2.push_back(b);
        }
    }
    for (int k = 0; k < r; ++k)
        draw_amplitude(rng, spec);
    return spec;
}

CVector synthesize_row(const SpectralSpec &spec, Eigen::Index n) {
    CVector x = CVector::Zero(n);
    for (int k = 0; k < spec.r; ++k)
        for (Eigen::Index t = 0; t < n; ++t) {
            // reduce the phase to [0, 1) turns before scaling by 2 pi
            const double turns = std::fmod(spec.f1[k] * static_cast<double>(t), 1.0);
            x(t) += spec.amplitude[k] * std::polar(1.0, 2.0 * std::numbers::pi * turns);
        }
    return x;
}

CMatrix synthesize_slice(const SpectralSpec &spec, Eigen::Index n, Eigen::Index s) {
    CMatrix x = CMatrix::Zero(n, s);
    for (int m = 0; m < spec.r; ++m)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < s; ++k) {
                const double turns = std::fmod(spec.f1[m] * static_cast<double>(j + 1) +
                                                   spec.f2[m] * static_cast<double>(k + 1),
                                               1.0);
                x(j, k) += spec.amplitude[m] * std::polar(1.0, 2.0 * std::numbers::pi * turns);
            }
    return x;
}

void require_rank(int r) {
    if (r < 1)
        throw DomainError("spectral generator: r must be at least 1");
}

} // namespace

SpectralMatrix gen_spectral_matrix(Eigen::Index d, Eigen::Index n, int r, std::uint64_t seed) {
    if (d < 1 || n < 1)
        throw DimensionError("gen_spectral_matrix: d and n must be positive");
    require_rank(r);
    const HankelShape shape = HankelShape::for_length(n);
    SpectralMatrix out;
    out.X_hat.resize(d, n);
    for (Eigen::Index i = 0; i < d; ++i) {
        bool certified = false;
        for (int attempt = 0; attempt < kMaxAttempts && !certified; ++attempt) {
            SpectralSpec spec = draw_1d(
                r, derive_seed(seed, {static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(attempt)}),
                attempt);
            const CVector row = synthesize_row(spec, n);
            if (rank_ratio(hankel_lift(row, shape), r) <= kRankCertificate) {
                out.X_hat.row(i) = row.transpose();
                out.rows.push_back(std::move(spec));
                certified = true;
            }
        }
        if (!certified)
            throw DomainError("gen_spectral_matrix: row " + std::to_string(i) +
                              " failed the rank certificate");
    }
    out.X = unitary_dft(d).adjoint() * out.X_hat;
    return out;
}

CMatrix gen_special(Eigen::Index d, Eigen::Index n) {
    if (d < 1 || n < 1)
        throw DimensionError("gen_special: d and n must be positive");
    CMatrix x = CMatrix::Zero(d, n);
    x.col(0).setOnes();
    return x;
}

CVector gen_adversarial_row(Eigen::Index n, int r, std::uint64_t seed) {
    // the spikes span an r x r anti-triangular corner of the lift
    if (n < 1 || r < 1 || r > HankelShape::for_length(n).n2)
        throw DomainError("gen_adversarial_row: need 1 <= r <= min(n1, n2)");
    Rng rng(seed);
    // 1-based positions as in the construction; converted at the end
    const bool low = rng.uniform_int(0, 1) == 0;
    const Eigen::Index k = low ? r : n - r + 1;
    CVector x = CVector::Zero(n);
    x(k - 1) = 1.0;
    if (r >= 2) {
        const Eigen::Index j = low ? rng.uniform_int(1, r - 1) : rng.uniform_int(n - r + 2, n);
        x(j - 1) = 1.0;
    }
    return x;
}

ReplacedRows replace_rows(const CMatrix &x_hat, int count, int r, std::uint64_t seed) {
    const auto d = x_hat.rows();
    if (count < 0 || count > d)
        throw DomainError("replace_rows: count must lie in [0, d]");
    Rng rng(seed);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i)
        order[static_cast<std::size_t>(i)] = i;
    for (int m = 0; m < count; ++m) {
        const auto pick = rng.uniform_int(m, d - 1);
        std::swap(order[static_cast<std::size_t>(m)], order[static_cast<std::size_t>(pick)]);
    }
    ReplacedRows out;
    out.X_hat = x_hat;
    out.rows.assign(order.begin(), order.begin() + count);
    for (auto row : out.rows)
        out.X_hat.row(row) =
            gen_adversarial_row(x_hat.cols(), r,
                                derive_seed(seed, {static_cast<std::uint64_t>(row)}))
                .transpose();
    out.X = unitary_dft(d).adjoint() * out.X_hat;
    return out;
}

SpectralArray gen_spectral_3d(Eigen::Index n, Eigen::Index s, Eigen::Index d, int r,
                              std::uint64_t seed) {
    if (n < 1 || s < 1 || d < 1)
        throw DimensionError("gen_spectral_3d: dims must be positive");
    require_rank(r);
    const TwoLevelShape shape = TwoLevelShape::for_size(n, s);
    std::vector<CMatrix> slices;
    SpectralArray out;
    for (Eigen::Index l = 0; l < d; ++l) {
        bool certified = false;
        for (int attempt = 0; attempt < kMaxAttempts && !certified; ++attempt) {
            SpectralSpec spec = draw_2d(
                r, derive_seed(seed, {static_cast<std::uint64_t>(l),
                                      static_cast<std::uint64_t>(attempt)}),
                attempt);
            CMatrix slice = synthesize_slice(spec, n, s);
            if (rank_ratio(two_level_lift(slice, shape), r) <= kRankCertificate) {
                slices.push_back(std::move(slice));
                out.slices.push_back(std::move(spec));
                certified = true;
            }
        }
        if (!certified)
            throw DomainError("gen_spectral_3d: slice " + std::to_string(l) +
                              " failed the rank certificate");
    }
    out.X_hat = Array3(std::move(slices));
    out.X = inverse_tube_dft(out.X_hat);
    return out;
}

} // namespace hmc
