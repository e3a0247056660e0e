#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hmc {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a master seed and a path of
/// indices, e.g. derive_seed(seed, {r_index, p_index, trial}).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// mt19937_64 with distribution code written out by hand, so streams are
/// identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  private:
    std::mt19937_64 engine_;
};

} // namespace hmc
