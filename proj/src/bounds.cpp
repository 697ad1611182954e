#include "bounds.hpp"

#include <cmath>

namespace mdclt {

namespace {

void validate(const MomentParams& mp, double n, int p, double c, const char* where) {
    if (!(mp.sigma_min > 0.0) || !(mp.sigma_lower > 0.0) || !(mp.sigma_upper > 0.0) ||
        !(mp.nu1 > 0.0) || !(mp.nu3 > 0.0) || !std::isfinite(mp.sigma_min + mp.sigma_lower +
                                                             mp.sigma_upper + mp.nu1 + mp.nu3))
        throw ConfigError(std::string(where) + ": moment params must be positive and finite");
    if (!(n >= 1.0)) throw ConfigError(std::string(where) + ": need n >= 1");
    if (p < 1) throw ConfigError(std::string(where) + ": need p >= 1");
    if (!(c > 0.0)) throw ConfigError(std::string(where) + ": need C > 0");
}

}  // namespace

double theorem_bound(const MomentParams& mp, double n, int p, double c) {
    validate(mp, n, p, c, "theorem_bound");
    const double pd = static_cast<double>(p);
    const double log_en = 1.0 + std::log(n);
    const double log_ep = 1.0 + std::log(pd);
    const double log_epn = 1.0 + std::log(pd * n);
    const double sl3 = mp.sigma_lower * mp.sigma_lower * mp.sigma_lower;
    const double term1 = mp.nu3 / sl3 * log_en * log_ep * log_ep * std::sqrt(log_epn);
    const double term2 = std::cbrt(mp.nu3) * std::cbrt(mp.sigma_upper) /
                         (mp.sigma_min * std::cbrt(mp.sigma_lower)) * log_ep *
                         std::sqrt(log_epn);
    return c / std::sqrt(n) * (term1 + term2);
}

double corollary_bound(const MomentParams& mp, double n, int m, int p, double c) {
    if (m < 1) throw ConfigError("corollary_bound: need m >= 1");
    const double n_eff = n / static_cast<double>(m);
    if (!(n_eff >= 1.0))
        throw ConfigError("corollary_bound: n_eff = n/m is below 1 (n = " + std::to_string(n) +
                          ", m = " + std::to_string(m) + ")");
    return theorem_bound(mp, n_eff, p, c);
}

EpsilonStar epsilon_star(const MomentParams& mp, double n, int p, double c) {
    validate(mp, n, p, c, "epsilon_star");
    const double pd = static_cast<double>(p);
    const double log_en = 1.0 + std::log(n);
    const double log_ep = 1.0 + std::log(pd);
    const double raw =
        c * (mp.nu3 / (mp.sigma_lower * mp.sigma_lower) * log_en * std::pow(log_ep, 1.5) +
             std::cbrt(mp.nu3 * mp.sigma_upper / mp.sigma_lower) * std::sqrt(log_ep));
    EpsilonStar out;
    out.clamped = raw < mp.nu1;   // the proof needs eps >= nu1
    out.value = out.clamped ? mp.nu1 : raw;
    return out;
}

}  // namespace mdclt
