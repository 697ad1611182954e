#pragma once

#include <cstdint>
#include <vector>

#include "core.hpp"

namespace mdclt {

// Berry-Esseen bound for the 1-dependent case:
//   (C/sqrt(n)) ( nu3/sigma_lower^3 log(en) (log(ep))^2 sqrt(log(epn))
//               + nu3^{1/3} sigma_upper^{1/3} / (sigma_min sigma_lower^{1/3})
//                 log(ep) sqrt(log(epn)) ).
// Logs are natural with the e-prefix convention log(e x) = 1 + ln x. n may be
// fractional (the m-dependent corollary substitutes n_eff = n/m).
double theorem_bound(const MomentParams& params, double n, int p, double c);

// theorem_bound with n replaced by n_eff = n/m throughout, logs included.
double corollary_bound(const MomentParams& params, double n, int m, int p, double c);

struct EpsilonStar {
    double value = 0.0;
    bool clamped = false;  // true when the nu1 side condition was binding
};

// Smoothing scale from the proof:
//   C ( (nu3/sigma_lower^2) log(en) (log(ep))^{3/2}
//     + (nu3 sigma_upper / sigma_lower)^{1/3} sqrt(log(ep)) ),
// clamped from below at nu1.
EpsilonStar epsilon_star(const MomentParams& params, double n, int p, double c);

}  // namespace mdclt
