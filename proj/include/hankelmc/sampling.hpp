#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

#include "hankelmc/types.hpp"

namespace hmc {

/// Observed-index set over a d x n matrix (dims {d, n}) or an n x s x d
/// array (dims {n, s, d}). Stored as a dense indicator, so indices are
/// unique by construction.
class SamplingMask {
  public:
    SamplingMask() = default;
    /// Empty mask over `dims` (2 or 3 positive extents).
    SamplingMask(std::vector<Eigen::Index> dims, double p = 0.0, std::uint64_t seed = 0);

    static SamplingMask full(std::vector<Eigen::Index> dims);

    const std::vector<Eigen::Index> &dims() const { return dims_; }
    bool is_3d() const { return dims_.size() == 3; }
    std::size_t cells() const { return flags_.size(); }
    std::size_t count() const;

    double p() const { return p_; }
    std::uint64_t seed() const { return seed_; }

    /// 2D entry (i, k) of the d x n matrix.
    bool observed(Eigen::Index i, Eigen::Index k) const { return flags_[index(i, k)] != 0; }
    /// 3D entry (j, k, i) of the n x s x d array.
    bool observed(Eigen::Index j, Eigen::Index k, Eigen::Index i) const {
        return flags_[index(j, k, i)] != 0;
    }
    void set(Eigen::Index i, Eigen::Index k, bool on = true) { flags_[index(i, k)] = on; }
    void set(Eigen::Index j, Eigen::Index k, Eigen::Index i, bool on = true) {
        flags_[index(j, k, i)] = on;
    }

    /// Observed positions (0-based) in row-major order; 2D entries use the
    /// first two components.
    std::vector<std::array<Eigen::Index, 3>> indices() const;

    bool same_dims(const SamplingMask &o) const { return dims_ == o.dims_; }
    SamplingMask operator|(const SamplingMask &o) const;

    friend bool operator==(const SamplingMask &a, const SamplingMask &b) {
        return a.dims_ == b.dims_ && a.flags_ == b.flags_;
    }

    /// Raw indicator in storage order (2D: i*n + k; 3D: (i*n + j)*s + k).
    const std::vector<std::uint8_t> &flags() const { return flags_; }
    std::vector<std::uint8_t> &flags() { return flags_; }

  private:
    std::size_t index(Eigen::Index i, Eigen::Index k) const {
        return static_cast<std::size_t>(i * dims_[1] + k);
    }
    std::size_t index(Eigen::Index j, Eigen::Index k, Eigen::Index i) const {
        return static_cast<std::size_t>((i * dims_[0] + j) * dims_[1] + k);
    }

    std::vector<Eigen::Index> dims_;
    std::vector<std::uint8_t> flags_;
    double p_ = 0.0;
    std::uint64_t seed_ = 0;
};

/// Each cell observed independently with probability p; a pure function of
/// (dims, p, seed).
SamplingMask bernoulli_mask(std::vector<Eigen::Index> dims, double p, std::uint64_t seed);

struct GolfingPartition {
    int k0 = 0;
    double q = 0.0;
    std::vector<SamplingMask> masks;

    SamplingMask union_mask() const;
};

/// k0 = ceil(2 log(#cells)) independent Bernoulli(q) masks with
/// q = 1 - (1-p)^(1/k0), so their union is Bernoulli(p). The logarithm base
/// defaults to e.
GolfingPartition golfing_partition(std::vector<Eigen::Index> dims, double p,
                                   std::uint64_t seed,
                                   double log_base = std::numbers::e);

CMatrix project(const CMatrix &x, const SamplingMask &mask);
Array3 project(const Array3 &x, const SamplingMask &mask);

} // namespace hmc
