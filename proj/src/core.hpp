#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <vector>

#include "errors.hpp"

namespace mdclt {

// ---------------------------------------------------------------------------
// Process description
// ---------------------------------------------------------------------------

enum class InnovationLaw { gaussian, rademacher, centered_exponential };

// Innovations are always centered with unit coordinate variance:
//   gaussian              N(0,1)
//   rademacher            +-1
//   centered_exponential  Exp(rate) shifted and rescaled, i.e. Exp(1) - 1
//                         (the standardized law does not depend on the rate;
//                         the rate is kept as descriptive metadata).
struct Innovation {
    InnovationLaw law = InnovationLaw::gaussian;
    double rate = 1.0;
};

// Moving-average description of an m-dependent centered sequence:
//   X_i = sum_{a=0..m} A_a eps_{i-a},  eps coordinate-wise i.i.d.
// Indices extend to eps_{1-m}..eps_n so the sequence is strictly stationary.
// Instances are immutable after construction (see procgen::make_ma_process)
// and safe to share across threads.
struct ProcessSpec {
    int p = 0;                              // vector dimension
    int m = 0;                              // dependence range
    std::vector<Eigen::MatrixXd> coeffs;    // A_0..A_m, each p x p
    Innovation innovation;

    // Lag covariances Gamma_0..Gamma_m with Gamma_l = Cov(X_i, X_{i+l});
    // cached at construction, Gamma_l = sum_a A_a A_{a+l}^T.
    std::vector<Eigen::MatrixXd> lag_covs;
};

// ---------------------------------------------------------------------------
// Rectangle geometry
// ---------------------------------------------------------------------------

// Corner r with band half-width delta. The band A_{r,delta} is the outer
// rectangle {x <= r + delta 1} minus the inner one {x <= r - delta 1}.
struct Rectangle {
    Eigen::VectorXd corner;
    double delta = 0.0;
};

// x <= r coordinate-wise.
bool rect_contains(const Eigen::VectorXd& x, const Eigen::VectorXd& corner);

// x in A_{r,delta}; equivalently -delta < max_k(x_k - r_k) <= delta.
bool band_membership(const Eigen::VectorXd& x, const Rectangle& rect);

// ---------------------------------------------------------------------------
// Extracted assumption constants and Monte Carlo estimates
// ---------------------------------------------------------------------------

// Normalized interval-sum covariance constants plus sup-norm moments, with
// the (n, m) the extraction used. Invariants: sigma_lower <= sigma_min <=
// sigma_upper and nu1 <= nu3^{1/3}.
struct MomentParams {
    double sigma_min = 0.0;
    double sigma_lower = 0.0;
    double sigma_upper = 0.0;
    double nu1 = 0.0;
    double nu3 = 0.0;
    double nu1_se = 0.0;
    double nu3_se = 0.0;
    std::int64_t n = 0;
    int m = 0;
};

enum class EstimateKind { mu, kappa };

struct DistanceEstimate {
    double value = 0.0;       // in [0,1]
    double se = 0.0;          // worst-case binomial unless bootstrapped
    std::int64_t n_rect = 0;  // rectangle family size
    std::int64_t r_x = 0;
    std::int64_t r_y = 0;
    EstimateKind kind = EstimateKind::mu;
};

// ---------------------------------------------------------------------------
// Replicated sample paths
// ---------------------------------------------------------------------------

// R independent replicates of a length-n sequence of p-vectors, replicate-
// major. Each replicate carries a prefix table so any interval sum
// S X_{[i,j]} (closed interval, 1-based) is an O(p) query. Immutable once
// filled; safe to share across threads.
class SampleBatch {
public:
    SampleBatch(std::int64_t R, std::int64_t n, int p, std::uint64_t master_seed,
                std::shared_ptr<const ProcessSpec> spec, int block_m = 0);

    std::int64_t replicates() const { return R_; }
    std::int64_t length() const { return n_; }
    int dim() const { return p_; }
    std::uint64_t master_seed() const { return seed_; }
    const std::shared_ptr<const ProcessSpec>& spec() const { return spec_; }

    // 0 for raw process output; otherwise the block size of the reduction
    // that produced this batch.
    int block_m() const { return block_m_; }

    const double* data() const { return data_.data(); }
    const double* path(std::int64_t r) const { return data_.data() + r * n_ * p_; }

    // X_i of replicate r, i in [1, n].
    Eigen::VectorXd value(std::int64_t r, std::int64_t i) const;

    // S X_{[i,j]} for every replicate; out is R x p, replicate-major.
    void prefix_sum(std::int64_t i, std::int64_t j, double* out) const;
    Eigen::VectorXd prefix_sum_one(std::int64_t r, std::int64_t i, std::int64_t j) const;

    // Fill interface used by the samplers: write into mutable_path(r), then
    // finalize_replicate(r) to build that replicate's prefix table.
    double* mutable_path(std::int64_t r) { return data_.data() + r * n_ * p_; }
    void finalize_replicate(std::int64_t r);

    static std::uint64_t required_bytes(std::int64_t R, std::int64_t n, int p);

private:
    void check_interval(std::int64_t i, std::int64_t j) const;

    std::int64_t R_;
    std::int64_t n_;
    int p_;
    std::uint64_t seed_;
    int block_m_;
    std::shared_ptr<const ProcessSpec> spec_;
    std::vector<double> data_;    // R * n * p
    std::vector<double> prefix_;  // R * (n+1) * p
};

}  // namespace mdclt
