#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core.hpp"

namespace mdclt {

// Finite proxy for the supremum over all corners r in R^p. Three ingredients:
//  - a full product grid of per-coordinate pooled quantiles (G levels) when
//    G^p stays under grid_cap,
//  - otherwise random corners drawn coordinate-wise from the pooled marginals,
//  - plus the diagonal family r = t 1 at diag_levels pooled quantile levels.
// Construction is deterministic given the pooled samples and the seed.
struct FamilyConfig {
    int grid_levels = 10;
    std::int64_t grid_cap = 1000000;
    int random_corners = 2048;
    int diag_levels = 512;
    bool include_diagonal = true;
    std::uint64_t seed = 0x7EC7A11E5EEDULL;
};

class RectangleFamily {
public:
    RectangleFamily(int p, std::vector<double> corners)
        : p_(p), corners_(std::move(corners)) {}

    int dim() const { return p_; }
    std::int64_t size() const { return static_cast<std::int64_t>(corners_.size()) / p_; }
    const double* corner(std::int64_t idx) const { return corners_.data() + idx * p_; }

private:
    int p_;
    std::vector<double> corners_;  // size * p, corner-major
};

RectangleFamily build_rectangle_family(const double* xs, std::int64_t rx, const double* ys,
                                       std::int64_t ry, int p, const FamilyConfig& cfg);

// mu-hat: max over the family of |F_X(r) - F_Y(r)| between the empirical
// rectangle CDFs. A documented lower bound of the true supremum. The default
// standard error is the worst-case binomial sqrt(1/(4 R_x) + 1/(4 R_y)).
DistanceEstimate estimate_mu(const double* xs, std::int64_t rx, const double* ys,
                             std::int64_t ry, int p, const RectangleFamily& family);

// Same estimator with a bootstrap standard error (replicates resampled with
// replacement on both sides, the family held fixed).
DistanceEstimate estimate_mu_bootstrap(const double* xs, std::int64_t rx, const double* ys,
                                       std::int64_t ry, int p, const RectangleFamily& family,
                                       int n_boot, std::uint64_t seed);

// kappa-hat(delta): max over the family of the empirical frequency of the
// band A_{r,delta}. Estimates the unconditional supremum over constant
// corners (a lower bound for the conditional quantity in the theory).
DistanceEstimate estimate_kappa(const double* xs, std::int64_t r, int p, double delta,
                                const RectangleFamily& family);

// Piecewise-linear one-sided mollifier of the band indicator, driven by
// w = max_k (x_k - r_k): 0 below -delta-eps, a ramp up to -delta, 1 on the
// band, a ramp down to delta+eps, 0 above. Dominates 1{x in A_{r,delta}}.
double smoothing_f(const Eigen::VectorXd& x, const Eigen::VectorXd& r, double delta, double eps);

// |grad f_eps(x)|_1 away from kinks:
//   (1/eps) (1{x in A_{r-(delta+eps/2)1, eps/2}} + 1{x in A_{r+(delta+eps/2)1, eps/2}}).
// Throws NumericError within 1e-9 of a kink or when the argmax coordinate of
// x - r is not unique (the identity only holds almost everywhere).
double grad_f_l1(const Eigen::VectorXd& x, const Eigen::VectorXd& r, double delta, double eps);

// ---------------------------------------------------------------------------
// Induction-lemma audits (diagnostics; the theory leaves the constants free)
// ---------------------------------------------------------------------------

struct Lemma1Audit {
    double c1 = 0.0;          // minimal feasible constant
    std::int64_t argmax_i = 0;
};

// C1 = max over the kappa grid of
//   kappa_i sqrt(max(i-2,1)) / ((delta+nu1)/sigma_min sqrt(log(ep)) + max_{j<=i-2} sqrt(j) mu_j).
// mu_grid and kappa_grid are (i, estimate) pairs; for every kappa point with
// i >= 3 the mu grid must reach some j <= i-2, otherwise the audit is
// incomplete and the error lists the gaps.
Lemma1Audit audit_lemma1(std::vector<std::pair<std::int64_t, double>> mu_grid,
                         const std::vector<std::pair<std::int64_t, double>>& kappa_grid,
                         double delta, const MomentParams& params, int p);

struct Lemma2Point {
    std::int64_t i = 0;
    double eps_i = 0.0;    // sqrt(eps^2 + max(sigma_lower^2 (n-i) - sigma_upper^2, 0))
    double delta_i = 0.0;  // c_delta * eps_i * sqrt(log(p n))
};

// Where kappa must be estimated for the Lemma A.2 audit: grid points must lie
// in (n/2 + 1, n]; the kappa estimate is taken at (i-1, delta_i).
std::vector<Lemma2Point> lemma2_points(const MomentParams& params, std::int64_t n, int p,
                                       double eps, double c_delta,
                                       const std::vector<std::int64_t>& i_grid);

struct Lemma2Audit {
    double rhs = 0.0;
    double term_smoothing = 0.0;   // (1/sqrt n)(nu3 (log ep)^{3/2}/sigma_lower^3 + eps log(ep)/sigma_min)
    double term_tail = 0.0;        // (1/(p n)) nu3 (sigma_upper/(eps^3 sigma_lower) + 1/(eps sigma_lower^2))
    double term_kappa = 0.0;       // anti-concentration block times sup kappa_{i-1}(delta_i)/eps_i
    double sup_ratio = 0.0;
};

// Evaluates the Lemma A.2 right-hand side term by term (C = 1 on every term)
// given kappa_{i-1}(delta_i) estimates keyed by i.
Lemma2Audit audit_lemma2_rhs(const MomentParams& params, std::int64_t n, int p, double eps,
                             double c_delta,
                             const std::vector<std::pair<std::int64_t, double>>& kappa_im1);

}  // namespace mdclt
