#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "core.hpp"

namespace mdclt {

struct SigmaConstants {
    double sigma_min = 0.0;
    double sigma_lower = 0.0;
    double sigma_upper = 0.0;
};

// Extracts the largest constants for which the interval-sum covariance
// assumptions hold on 1 <= i <= j <= n with divisor len * min(m, len):
//   sigma_min^2  = min over intervals of min_k Var[S X^(k)] / divisor
//   sigma_lower^2 = min of lambda_min / divisor
//   sigma_upper^2 = max of lambda_max / divisor.
// Stationarity reduces the scan to lengths 1..n. Requires m >= 1 (the
// divisor would vanish otherwise).
SigmaConstants extract_sigmas(const ProcessSpec& spec, std::int64_t n, int m);

// General O(n^2) scan for externally supplied (possibly non-stationary)
// interval covariances; interval_cov(i, j) = Var[S X_{[i,j]}].
SigmaConstants extract_sigmas_general(
    const std::function<Eigen::MatrixXd(std::int64_t, std::int64_t)>& interval_cov,
    std::int64_t n, int m);

struct NuEstimate {
    double nu1 = 0.0;
    double nu3 = 0.0;
    double nu1_se = 0.0;
    double nu3_se = 0.0;
};

// Monte Carlo estimates of nu_1 = max(E|X|_inf, E|Y|_inf) and nu_3 (third
// powers), with Y ~ N(0, Gamma_0) the matched Gaussian. Standard errors are
// those of the branch attaining each maximum.
NuEstimate estimate_nu(const ProcessSpec& spec, std::int64_t n_mc, std::uint64_t seed);

// Moments of scale * S X_{[1,len]} and its Gaussian analog; used by the
// blocking module for block vectors.
NuEstimate estimate_nu_interval(const ProcessSpec& spec, std::int64_t len, double scale,
                                std::int64_t n_mc, std::uint64_t seed);

// Convenience: sigmas + nus in one MomentParams.
MomentParams extract_params(const ProcessSpec& spec, std::int64_t n, int m, std::int64_t n_mc,
                            std::uint64_t seed);

// JSON round-trip; records the sampling settings alongside the constants.
std::string moment_params_to_json(const MomentParams& mp, std::int64_t nu_mc,
                                  std::uint64_t nu_seed);
MomentParams moment_params_from_json(const std::string& text);

}  // namespace mdclt
