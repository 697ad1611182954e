#pragma once

#include <cstdint>

namespace mdclt {

// SplitMix64 (Vigna); used only to expand seeds into generator state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Counter-based stream derivation. Stream `id` of a run seeded with `master`
// always starts from the same state, no matter which thread draws it or in
// which order streams are created. This function is part of the on-disk
// reproducibility contract and must not change between releases.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id);

// xoshiro256++ with fully pinned draw semantics. All distributions are
// implemented here rather than via <random> so that output does not depend
// on the standard library in use.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // Uniform on [0,1), 53-bit resolution.
    double next_double();

    // Standard normal via Box-Muller; the second member of each pair is
    // cached, so draws come in a pinned order.
    double next_gaussian();

    // +1 or -1 with equal probability.
    double next_rademacher();

    // Exp(1) - 1: unit variance, mean zero.
    double next_centered_exponential();

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mdclt
