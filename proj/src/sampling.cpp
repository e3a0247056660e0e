#include "hankelmc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hankelmc/rng.hpp"

namespace hmc {

SamplingMask::SamplingMask(std::vector<Eigen::Index> dims, double p, std::uint64_t seed)
    : dims_(std::move(dims)), p_(p), seed_(seed) {
    if (dims_.size() != 2 && dims_.size() != 3)
        throw DimensionError("SamplingMask: dims must have 2 or 3 extents");
    std::size_t cells = 1;
    for (auto e : dims_) {
        if (e < 1)
            throw DimensionError("SamplingMask: extents must be positive");
        cells *= static_cast<std::size_t>(e);
    }
    flags_.assign(cells, 0);
}

SamplingMask SamplingMask::full(std::vector<Eigen::Index> dims) {
    SamplingMask m(std::move(dims), 1.0, 0);
    std::fill(m.flags_.begin(), m.flags_.end(), 1);
    return m;
}

std::size_t SamplingMask::count() const {
    return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1));
}

std::vector<std::array<Eigen::Index, 3>> SamplingMask::indices() const {
    std::vector<std::array<Eigen::Index, 3>> out;
    if (!is_3d()) {
        for (Eigen::Index i = 0; i < dims_[0]; ++i)
            for (Eigen::Index k = 0; k < dims_[1]; ++k)
                if (observed(i, k))
                    out.push_back({i, k, 0});
        return out;
    }
    for (Eigen::Index j = 0; j < dims_[0]; ++j)
        for (Eigen::Index k = 0; k < dims_[1]; ++k)
            for (Eigen::Index i = 0; i < dims_[2]; ++i)
                if (observed(j, k, i))
                    out.push_back({j, k, i});
    return out;
}

SamplingMask SamplingMask::operator|(const SamplingMask &o) const {
    if (!same_dims(o))
        throw DimensionError("SamplingMask |: dimension mismatch");
    SamplingMask out = *this;
    for (std::size_t c = 0; c < flags_.size(); ++c)
        out.flags_[c] = flags_[c] | o.flags_[c];
    return out;
}

SamplingMask bernoulli_mask(std::vector<Eigen::Index> dims, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("bernoulli_mask: p must lie in [0, 1]");
    SamplingMask mask(std::move(dims), p, seed);
    Rng rng(seed);
    for (auto &f : mask.flags())
        f = rng.uniform() < p ? 1 : 0;
    return mask;
}

SamplingMask GolfingPartition::union_mask() const {
    if (masks.empty())
        throw DimensionError("GolfingPartition: no masks");
    SamplingMask u = masks.front();
    for (std::size_t k = 1; k < masks.size(); ++k)
        u = u | masks[k];
    return u;
}

GolfingPartition golfing_partition(std::vector<Eigen::Index> dims, double p,
                                   std::uint64_t seed, double log_base) {
    if (!(p > 0.0 && p <= 1.0))
        throw DomainError("golfing_partition: p must lie in (0, 1]");
    if (!(log_base > 1.0))
        throw DomainError("golfing_partition: log base must exceed 1");
    const double cells = std::accumulate(dims.begin(), dims.end(), 1.0,
                                         [](double a, Eigen::Index e) { return a * e; });
    GolfingPartition out;
    out.k0 = std::max(1, static_cast<int>(std::ceil(2.0 * std::log(cells) / std::log(log_base))));
    out.q = 1.0 - std::pow(1.0 - p, 1.0 / out.k0);
    out.masks.reserve(static_cast<std::size_t>(out.k0));
    for (int k = 0; k < out.k0; ++k)
        out.masks.push_back(
            bernoulli_mask(dims, out.q, derive_seed(seed, {static_cast<std::uint64_t>(k)})));
    return out;
}

CMatrix project(const CMatrix &x, const SamplingMask &mask) {
    if (mask.is_3d() || x.rows() != mask.dims()[0] || x.cols() != mask.dims()[1])
        throw DimensionError("project: matrix does not match mask dims");
    CMatrix out = CMatrix::Zero(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index k = 0; k < x.cols(); ++k)
            if (mask.observed(i, k))
                out(i, k) = x(i, k);
    return out;
}

Array3 project(const Array3 &x, const SamplingMask &mask) {
    if (!mask.is_3d() || x.n() != mask.dims()[0] || x.s() != mask.dims()[1] ||
        x.d() != mask.dims()[2])
        throw DimensionError("project: array does not match mask dims");
    Array3 out(x.n(), x.s(), x.d());
    for (Eigen::Index i = 0; i < x.d(); ++i)
        for (Eigen::Index j = 0; j < x.n(); ++j)
            for (Eigen::Index k = 0; k < x.s(); ++k)
                if (mask.observed(j, k, i))
                    out(j, k, i) = x(j, k, i);
    return out;
}

} // namespace hmc
