#include "core.hpp"

#include <string>

#include "summation.hpp"

namespace mdclt {

bool rect_contains(const Eigen::VectorXd& x, const Eigen::VectorXd& corner) {
    if (x.size() != corner.size())
        throw ConfigError("rect_contains: dimension mismatch (" + std::to_string(x.size()) +
                          " vs " + std::to_string(corner.size()) + ")");
    for (Eigen::Index k = 0; k < x.size(); ++k)
        if (x[k] > corner[k]) return false;
    return true;
}

bool band_membership(const Eigen::VectorXd& x, const Rectangle& rect) {
    if (rect.delta < 0.0) throw ConfigError("band_membership: delta must be >= 0");
    if (x.size() != rect.corner.size())
        throw ConfigError("band_membership: dimension mismatch (" + std::to_string(x.size()) +
                          " vs " + std::to_string(rect.corner.size()) + ")");
    double w = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < x.size(); ++k) w = std::max(w, x[k] - rect.corner[k]);
    return w > -rect.delta && w <= rect.delta;
}

SampleBatch::SampleBatch(std::int64_t R, std::int64_t n, int p, std::uint64_t master_seed,
                         std::shared_ptr<const ProcessSpec> spec, int block_m)
    : R_(R), n_(n), p_(p), seed_(master_seed), block_m_(block_m), spec_(std::move(spec)) {
    if (R <= 0 || n <= 0 || p <= 0)
        throw ConfigError("SampleBatch: R, n, p must all be positive");
    data_.resize(static_cast<std::size_t>(R) * n * p);
    prefix_.resize(static_cast<std::size_t>(R) * (n + 1) * p);
}

std::uint64_t SampleBatch::required_bytes(std::int64_t R, std::int64_t n, int p) {
    const std::uint64_t cells = static_cast<std::uint64_t>(R) * static_cast<std::uint64_t>(n) *
                                static_cast<std::uint64_t>(p);
    const std::uint64_t prefix_cells =
        static_cast<std::uint64_t>(R) * static_cast<std::uint64_t>(n + 1) *
        static_cast<std::uint64_t>(p);
    return (cells + prefix_cells) * sizeof(double);
}

void SampleBatch::finalize_replicate(std::int64_t r) {
    build_prefix(data_.data() + r * n_ * p_, n_, p_, prefix_.data() + r * (n_ + 1) * p_);
}

Eigen::VectorXd SampleBatch::value(std::int64_t r, std::int64_t i) const {
    if (r < 0 || r >= R_) throw ConfigError("SampleBatch::value: replicate out of range");
    if (i < 1 || i > n_) throw ConfigError("SampleBatch::value: index out of range");
    return Eigen::Map<const Eigen::VectorXd>(data_.data() + (r * n_ + (i - 1)) * p_, p_);
}

void SampleBatch::check_interval(std::int64_t i, std::int64_t j) const {
    if (i < 1 || j > n_ || i > j)
        throw ConfigError("prefix_sum: interval [" + std::to_string(i) + "," + std::to_string(j) +
                          "] out of range for n=" + std::to_string(n_));
}

void SampleBatch::prefix_sum(std::int64_t i, std::int64_t j, double* out) const {
    check_interval(i, j);
    for (std::int64_t r = 0; r < R_; ++r) {
        const double* base = prefix_.data() + r * (n_ + 1) * p_;
        const double* lo = base + (i - 1) * p_;
        const double* hi = base + j * p_;
        double* dst = out + r * p_;
        for (int k = 0; k < p_; ++k) dst[k] = hi[k] - lo[k];
    }
}

Eigen::VectorXd SampleBatch::prefix_sum_one(std::int64_t r, std::int64_t i, std::int64_t j) const {
    if (r < 0 || r >= R_) throw ConfigError("prefix_sum: replicate out of range");
    check_interval(i, j);
    const double* base = prefix_.data() + r * (n_ + 1) * p_;
    Eigen::VectorXd out(p_);
    for (int k = 0; k < p_; ++k) out[k] = base[j * p_ + k] - base[(i - 1) * p_ + k];
    return out;
}

}  // namespace mdclt
