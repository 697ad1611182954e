#pragma once

#include <cstdint>
#include <vector>

namespace mdclt {

struct RatePoint {
    double n_eff = 0.0;
    double mu_hat = 0.0;
    double se = 0.0;
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::vector<double> used_n_eff;      // points entering the regression
    std::vector<double> excluded_n_eff;  // dropped: mu_hat <= 2 se (noise floor)
};

// Ordinary least squares of ln(mu_hat) on ln(n_eff). Points whose estimate is
// within twice its standard error of zero are excluded and reported; fewer
// than three usable points is an error.
RateFit fit_loglog_slope(const std::vector<RatePoint>& points);

}  // namespace mdclt
