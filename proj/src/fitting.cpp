#include "fitting.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace mdclt {

RateFit fit_loglog_slope(const std::vector<RatePoint>& points) {
    RateFit fit;
    std::vector<double> lx, ly;
    for (const auto& pt : points) {
        if (!(pt.n_eff > 0.0))
            throw ConfigError("fit_loglog_slope: n_eff must be positive");
        if (pt.mu_hat <= 2.0 * pt.se || !(pt.mu_hat > 0.0)) {
            fit.excluded_n_eff.push_back(pt.n_eff);
            continue;
        }
        lx.push_back(std::log(pt.n_eff));
        ly.push_back(std::log(pt.mu_hat));
        fit.used_n_eff.push_back(pt.n_eff);
    }
    const auto n = static_cast<std::int64_t>(lx.size());
    if (n < 3)
        throw ConfigError("fit_loglog_slope: insufficient data, only " + std::to_string(n) +
                          " usable points (need >= 3)");

    double mx = 0.0, my = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw ConfigError("fit_loglog_slope: degenerate abscissae");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = syy - sxy * sxy / sxx;
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

}  // namespace mdclt
