#include "rng.hpp"

#include <cmath>

namespace mdclt {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

inline std::uint64_t stream_state(std::uint64_t master, std::uint64_t stream_id) {
    // Odd multiplier keeps id -> state injective before the splitmix scramble.
    return master ^ (0x9E3779B97F4A7C15ULL * (stream_id + 0x632BE59BD9B4E019ULL));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
    SplitMix64 sm(stream_state(master, stream_id));
    return sm.next();
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id) {
    SplitMix64 sm(stream_state(master_seed, stream_id));
    for (auto& w : s_) w = sm.next();
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0,1], keeps log finite
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double RngStream::next_rademacher() {
    return (next_u64() >> 63) ? 1.0 : -1.0;
}

double RngStream::next_centered_exponential() {
    return -std::log1p(-next_double()) - 1.0;
}

}  // namespace mdclt
