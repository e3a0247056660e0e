#pragma once

#include <cstdint>
#include <vector>

#include "hankelmc/types.hpp"

namespace hmc {

/// Parameters of one spectrally sparse row (2D) or frontal slice (3D).
struct SpectralSpec {
    int r = 0;
    std::vector<double> f1;  ///< frequencies in [0, 1)
    std::vector<double> f2;  ///< second-axis frequencies (3D only)
    std::vector<double> psi; ///< phases in [0, 2 pi)
    std::vector<double> c;   ///< magnitude exponents in [0, 1]
    std::vector<cplx> amplitude; ///< (1 + 10^(c/2)) exp(i psi)
    std::uint64_t seed = 0;
    int attempt = 0; ///< how many rank-certificate retries were needed
};

struct SpectralMatrix {
    CMatrix X;     ///< time domain, F^{-1} X_hat
    CMatrix X_hat; ///< Fourier domain, rows are sums of r complex exponentials
    std::vector<SpectralSpec> rows;
};

struct SpectralArray {
    Array3 X;
    Array3 X_hat;
    std::vector<SpectralSpec> slices;
};

struct ReplacedRows {
    CMatrix X;
    CMatrix X_hat;
    std::vector<Eigen::Index> rows; ///< 0-based indices of the replaced rows
};

/// Minimum circular gap between drawn frequencies.
inline constexpr double kFrequencyGap = 1e-6;
/// Every generated row/slice must satisfy sigma_{r+1}/sigma_1 <= this.
inline constexpr double kRankCertificate = 1e-8;

/// d x n matrix whose Fourier-domain rows are x(t) = sum_k d_k exp(2 pi i f_k t),
/// t = 0..n-1. Each row's square Hankel lift is certified rank r; a row that
/// fails is redrawn from the next seed stream.
SpectralMatrix gen_spectral_matrix(Eigen::Index d, Eigen::Index n, int r, std::uint64_t seed);

/// 1 e_1^T: ones in the first column.
CMatrix gen_special(Eigen::Index d, Eigen::Index n);

/// Two-spike vector with rank-r Hankel lift (k in {r, n-r+1}, j on the short
/// side of k; both entries 1). For r = 1 only the spike at k is set.
CVector gen_adversarial_row(Eigen::Index n, int r, std::uint64_t seed);

/// Replaces `count` distinct random rows of X_hat with adversarial rows and
/// returns the time-domain matrix.
ReplacedRows replace_rows(const CMatrix &x_hat, int count, int r, std::uint64_t seed);

/// n x s x d array whose frontal Fourier slices are
/// X_hat_l(j, k) = sum_s d_s w_s^j z_s^k (j, k 1-based), with certified
/// two-level Hankel rank r.
SpectralArray gen_spectral_3d(Eigen::Index n, Eigen::Index s, Eigen::Index d, int r,
                              std::uint64_t seed);

} // namespace hmc
