#pragma once

#include <cstdint>
#include <memory>

#include "core.hpp"
#include "params.hpp"

namespace mdclt {

// Number of blocks n' = floor((n-1)/m); the last block absorbs the remainder
// (lengths m+1 .. 2m). With drop_remainder the count is floor(n/m) and the
// tail is discarded instead.
std::int64_t blocked_length(std::int64_t n, int m, bool drop_remainder = false);

// X'_i = (1/m) S X_{((i-1)m, im]} with the last block extended to n. The
// identity m * sum_i X'_i = S X_{[1,n]} holds up to prefix-table rounding
// (and exactly for integer-valued data). Requires n >= m+1.
std::shared_ptr<SampleBatch> block_reduce(const SampleBatch& batch, int m,
                                          bool drop_remainder = false);

// Exact Cov(X'_i, X'_{i+lag}) of the blocked process, propagated through the
// block linear map from the spec's lag covariances. Zero for lag >= 2 when
// the spec is m-dependent.
Eigen::MatrixXd blocked_lag_cov(const ProcessSpec& spec, int m, std::int64_t n, std::int64_t i,
                                std::int64_t lag);

// Exact Var[S X'_{[i,j]}]; blocks are contiguous, so this is a rescaled
// physical interval covariance.
Eigen::MatrixXd blocked_sum_covariance(const ProcessSpec& spec, int m, std::int64_t n,
                                       std::int64_t i, std::int64_t j);

// Assumption constants of the blocked process with m' = 1, from exact
// covariances (no Monte Carlo). The Corollary proof claims these satisfy
// sigma'_min >= sigma_min, sigma'_lower >= sigma_lower, sigma'_upper <=
// 2 sigma_upper relative to the raw process.
SigmaConstants extract_sigmas_blocked(const ProcessSpec& spec, std::int64_t n, int m);

// nu moments of the blocked vectors (regular and remainder blocks, X' and
// Gaussian branches; the maximum is returned).
NuEstimate estimate_nu_blocked(const ProcessSpec& spec, std::int64_t n, int m, std::int64_t n_mc,
                               std::uint64_t seed);

struct DependenceCheck {
    double statistic = 0.0;   // max |empirical cross-covariance entry|, lags in (lag, lag+window]
    double null_q95 = 0.0;    // 95th percentile under replicate-shuffled null
    int lag_from = 0;
    int lag_to = 0;
    bool pass = false;        // statistic <= null_q95
};

// Tests that lags above `lag` are uncorrelated: the statistic is the largest
// absolute entry of the empirical cross-covariances at lags lag+1..lag+window,
// compared against its null distribution obtained by pairing each replicate's
// left factor with a cyclically shifted replicate's right factor.
DependenceCheck verify_m_dependence(const SampleBatch& batch, int lag, int n_perm = 200,
                                    std::uint64_t seed = 1, int window = 3);

}  // namespace mdclt
