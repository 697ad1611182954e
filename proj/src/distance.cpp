#include "distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "rng.hpp"
#include "summation.hpp"

namespace mdclt {

namespace {

double quantile_of_sorted(const std::vector<double>& sorted, double level) {
    const auto n = static_cast<std::int64_t>(sorted.size());
    std::int64_t idx = static_cast<std::int64_t>(std::ceil(level * static_cast<double>(n))) - 1;
    idx = std::clamp<std::int64_t>(idx, 0, n - 1);
    return sorted[static_cast<std::size_t>(idx)];
}

// x <= corner coordinate-wise, early exit on the first violation.
inline bool below_corner(const double* x, const double* corner, int p) {
    for (int k = 0; k < p; ++k)
        if (x[k] > corner[k]) return false;
    return true;
}

double log_ep(int p) { return 1.0 + std::log(static_cast<double>(p)); }

void check_params_positive(const MomentParams& mp, const char* where) {
    if (!(mp.sigma_min > 0.0) || !(mp.sigma_lower > 0.0) || !(mp.sigma_upper > 0.0) ||
        !(mp.nu1 > 0.0) || !(mp.nu3 > 0.0))
        throw ConfigError(std::string(where) + ": moment params must be positive");
}

}  // namespace

RectangleFamily build_rectangle_family(const double* xs, std::int64_t rx, const double* ys,
                                       std::int64_t ry, int p, const FamilyConfig& cfg) {
    if (p < 1) throw ConfigError("build_rectangle_family: p must be >= 1");
    if (rx < 1 && ry < 1) throw ConfigError("build_rectangle_family: empty samples");
    if (rx < 0 || ry < 0 || (rx > 0 && xs == nullptr) || (ry > 0 && ys == nullptr))
        throw ConfigError("build_rectangle_family: bad sample arrays");

    const std::int64_t pooled = rx + ry;
    auto pooled_at = [&](std::int64_t i, int k) {
        return i < rx ? xs[i * p + k] : ys[(i - rx) * p + k];
    };

    std::vector<double> corners;

    // Product grid of per-coordinate pooled quantiles, if it stays small
    // enough; otherwise random corners from the pooled marginals.
    double grid_size = 1.0;
    for (int k = 0; k < p; ++k) {
        grid_size *= static_cast<double>(cfg.grid_levels);
        if (grid_size > 2.0 * static_cast<double>(cfg.grid_cap)) break;
    }
    const bool use_grid =
        cfg.grid_levels >= 1 && grid_size <= static_cast<double>(cfg.grid_cap);

    if (use_grid) {
        std::vector<std::vector<double>> levels(p);
        std::vector<double> column(static_cast<std::size_t>(pooled));
        for (int k = 0; k < p; ++k) {
            for (std::int64_t i = 0; i < pooled; ++i)
                column[static_cast<std::size_t>(i)] = pooled_at(i, k);
            std::sort(column.begin(), column.end());
            levels[k].reserve(cfg.grid_levels);
            for (int t = 1; t <= cfg.grid_levels; ++t)
                levels[k].push_back(quantile_of_sorted(
                    column, static_cast<double>(t) / (cfg.grid_levels + 1)));
        }
        const auto total = static_cast<std::int64_t>(grid_size);
        corners.reserve(static_cast<std::size_t>(total) * p);
        std::vector<int> digit(p, 0);
        for (std::int64_t c = 0; c < total; ++c) {
            for (int k = 0; k < p; ++k) corners.push_back(levels[k][digit[k]]);
            for (int k = p - 1; k >= 0; --k) {
                if (++digit[k] < cfg.grid_levels) break;
                digit[k] = 0;
            }
        }
    } else if (cfg.random_corners > 0) {
        RngStream rng(cfg.seed, 0);
        corners.reserve(static_cast<std::size_t>(cfg.random_corners) * p);
        for (int c = 0; c < cfg.random_corners; ++c)
            for (int k = 0; k < p; ++k)
                corners.push_back(
                    pooled_at(static_cast<std::int64_t>(rng.next_u64() % pooled), k));
    }

    if (cfg.include_diagonal && cfg.diag_levels > 0) {
        // Corners t * 1 with t running over pooled quantiles of max_k x_k.
        std::vector<double> row_max(static_cast<std::size_t>(pooled));
        for (std::int64_t i = 0; i < pooled; ++i) {
            double w = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < p; ++k) w = std::max(w, pooled_at(i, k));
            row_max[static_cast<std::size_t>(i)] = w;
        }
        std::sort(row_max.begin(), row_max.end());
        for (int t = 1; t <= cfg.diag_levels; ++t) {
            const double level =
                quantile_of_sorted(row_max, static_cast<double>(t) / (cfg.diag_levels + 1));
            for (int k = 0; k < p; ++k) corners.push_back(level);
        }
    }

    if (corners.empty()) throw ConfigError("build_rectangle_family: configuration yields no corners");
    return RectangleFamily(p, std::move(corners));
}

namespace {

struct MaxSlot {
    double value = -1.0;
    std::int64_t idx = std::numeric_limits<std::int64_t>::max();
};

// Order-independent merge: larger value wins, ties resolved to the lower
// corner index, so the result does not depend on chunking.
void merge_max(MaxSlot& into, double value, std::int64_t idx) {
    if (value > into.value || (value == into.value && idx < into.idx)) {
        into.value = value;
        into.idx = idx;
    }
}

}  // namespace

DistanceEstimate estimate_mu(const double* xs, std::int64_t rx, const double* ys,
                             std::int64_t ry, int p, const RectangleFamily& family) {
    if (rx < 1 || ry < 1) throw ConfigError("estimate_mu: need samples on both sides");
    if (family.dim() != p) throw ConfigError("estimate_mu: family dimension mismatch");
    const std::int64_t n_rect = family.size();
    std::vector<double> values(static_cast<std::size_t>(n_rect));
    parallel_for(n_rect, [&](std::int64_t c) {
        const double* corner = family.corner(c);
        std::int64_t cx = 0, cy = 0;
        for (std::int64_t i = 0; i < rx; ++i) cx += below_corner(xs + i * p, corner, p);
        for (std::int64_t i = 0; i < ry; ++i) cy += below_corner(ys + i * p, corner, p);
        values[c] = std::abs(static_cast<double>(cx) / static_cast<double>(rx) -
                             static_cast<double>(cy) / static_cast<double>(ry));
    });
    MaxSlot best;
    for (std::int64_t c = 0; c < n_rect; ++c) merge_max(best, values[c], c);

    DistanceEstimate est;
    est.value = std::max(best.value, 0.0);
    est.se = std::sqrt(0.25 / static_cast<double>(rx) + 0.25 / static_cast<double>(ry));
    est.n_rect = n_rect;
    est.r_x = rx;
    est.r_y = ry;
    est.kind = EstimateKind::mu;
    return est;
}

DistanceEstimate estimate_mu_bootstrap(const double* xs, std::int64_t rx, const double* ys,
                                       std::int64_t ry, int p, const RectangleFamily& family,
                                       int n_boot, std::uint64_t seed) {
    if (n_boot < 2) throw ConfigError("estimate_mu_bootstrap: need n_boot >= 2");
    DistanceEstimate est = estimate_mu(xs, rx, ys, ry, p, family);
    const std::int64_t n_rect = family.size();
    std::vector<double> boot(static_cast<std::size_t>(n_boot));
    parallel_for(n_boot, [&](std::int64_t b) {
        RngStream rng(seed, static_cast<std::uint64_t>(b));
        std::vector<std::int64_t> ix(static_cast<std::size_t>(rx));
        std::vector<std::int64_t> iy(static_cast<std::size_t>(ry));
        for (auto& i : ix) i = static_cast<std::int64_t>(rng.next_u64() % rx);
        for (auto& i : iy) i = static_cast<std::int64_t>(rng.next_u64() % ry);
        double max_diff = 0.0;
        for (std::int64_t c = 0; c < n_rect; ++c) {
            const double* corner = family.corner(c);
            std::int64_t cx = 0, cy = 0;
            for (std::int64_t i : ix) cx += below_corner(xs + i * p, corner, p);
            for (std::int64_t i : iy) cy += below_corner(ys + i * p, corner, p);
            max_diff = std::max(max_diff,
                                std::abs(static_cast<double>(cx) / static_cast<double>(rx) -
                                         static_cast<double>(cy) / static_cast<double>(ry)));
        }
        boot[b] = max_diff;
    });
    const double mean = pairwise_sum(boot.data(), n_boot) / n_boot;
    double ss = 0.0;
    for (double v : boot) ss += (v - mean) * (v - mean);
    est.se = std::sqrt(ss / (n_boot - 1));
    return est;
}

DistanceEstimate estimate_kappa(const double* xs, std::int64_t r, int p, double delta,
                                const RectangleFamily& family) {
    if (r < 1) throw ConfigError("estimate_kappa: need samples");
    if (delta < 0.0) throw ConfigError("estimate_kappa: delta must be >= 0");
    if (family.dim() != p) throw ConfigError("estimate_kappa: family dimension mismatch");
    const std::int64_t n_rect = family.size();
    std::vector<double> values(static_cast<std::size_t>(n_rect));
    parallel_for(n_rect, [&](std::int64_t c) {
        const double* corner = family.corner(c);
        std::int64_t count = 0;
        for (std::int64_t i = 0; i < r; ++i) {
            const double* x = xs + i * p;
            double w = -std::numeric_limits<double>::infinity();
            bool outside = false;
            for (int k = 0; k < p; ++k) {
                w = std::max(w, x[k] - corner[k]);
                if (w > delta) {
                    outside = true;
                    break;
                }
            }
            if (!outside && w > -delta) ++count;
        }
        values[c] = static_cast<double>(count) / static_cast<double>(r);
    });
    MaxSlot best;
    for (std::int64_t c = 0; c < n_rect; ++c) merge_max(best, values[c], c);

    DistanceEstimate est;
    est.value = std::max(best.value, 0.0);
    est.se = std::sqrt(0.25 / static_cast<double>(r));
    est.n_rect = n_rect;
    est.r_x = r;
    est.r_y = 0;
    est.kind = EstimateKind::kappa;
    return est;
}

double smoothing_f(const Eigen::VectorXd& x, const Eigen::VectorXd& r, double delta, double eps) {
    if (!(eps > 0.0)) throw ConfigError("smoothing_f: eps must be > 0");
    if (delta < 0.0) throw ConfigError("smoothing_f: delta must be >= 0");
    if (x.size() != r.size()) throw ConfigError("smoothing_f: dimension mismatch");
    const double w = (x - r).maxCoeff();
    if (w <= -delta - eps) return 0.0;
    if (w <= -delta) return (w + delta + eps) / eps;
    if (w <= delta) return 1.0;
    if (w <= delta + eps) return (delta + eps - w) / eps;
    return 0.0;
}

double grad_f_l1(const Eigen::VectorXd& x, const Eigen::VectorXd& r, double delta, double eps) {
    if (!(eps > 0.0)) throw ConfigError("grad_f_l1: eps must be > 0");
    if (delta < 0.0) throw ConfigError("grad_f_l1: delta must be >= 0");
    if (x.size() != r.size()) throw ConfigError("grad_f_l1: dimension mismatch");

    double w = -std::numeric_limits<double>::infinity();
    double second = w;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double d = x[k] - r[k];
        if (d > w) {
            second = w;
            w = d;
        } else if (d > second) {
            second = d;
        }
    }
    constexpr double kGuard = 1e-9;
    for (double kink : {-delta - eps, -delta, delta, delta + eps}) {
        if (std::abs(w - kink) <= kGuard)
            throw NumericError("grad_f_l1: undefined at a kink of f_eps (w = " +
                               std::to_string(w) + "); resample the evaluation point");
    }
    if (x.size() > 1 && w - second <= kGuard)
        throw NumericError("grad_f_l1: argmax coordinate of x - r is not unique");

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(x.size());
    const Rectangle inner{r - (delta + eps / 2.0) * ones, eps / 2.0};
    const Rectangle outer{r + (delta + eps / 2.0) * ones, eps / 2.0};
    const double indicators = (band_membership(x, inner) ? 1.0 : 0.0) +
                              (band_membership(x, outer) ? 1.0 : 0.0);
    return indicators / eps;
}

// ---------------------------------------------------------------------------
// Audits
// ---------------------------------------------------------------------------

Lemma1Audit audit_lemma1(std::vector<std::pair<std::int64_t, double>> mu_grid,
                         const std::vector<std::pair<std::int64_t, double>>& kappa_grid,
                         double delta, const MomentParams& params, int p) {
    check_params_positive(params, "audit_lemma1");
    if (p < 1) throw ConfigError("audit_lemma1: p must be >= 1");
    if (delta < 0.0) throw ConfigError("audit_lemma1: delta must be >= 0");
    if (kappa_grid.empty())
        throw ConfigError("audit_lemma1: incomplete audit, empty kappa grid");
    std::sort(mu_grid.begin(), mu_grid.end());

    std::string gaps;
    Lemma1Audit out;
    const double base = (delta + params.nu1) / params.sigma_min * std::sqrt(log_ep(p));
    for (const auto& [i, kappa_hat] : kappa_grid) {
        if (i < 1) throw ConfigError("audit_lemma1: kappa grid index must be >= 1");
        double mu_term = 0.0;
        bool have_mu = false;
        for (const auto& [j, mu_hat] : mu_grid) {
            if (j > i - 2) break;
            mu_term = std::max(mu_term, std::sqrt(static_cast<double>(j)) * mu_hat);
            have_mu = true;
        }
        if (i >= 3 && !have_mu) {
            gaps += (gaps.empty() ? "" : ", ") + std::to_string(i);
            continue;
        }
        const double denom = base + mu_term;
        const double value =
            kappa_hat * std::sqrt(static_cast<double>(std::max<std::int64_t>(i - 2, 1))) / denom;
        if (value > out.c1) {
            out.c1 = value;
            out.argmax_i = i;
        }
    }
    if (!gaps.empty())
        throw ConfigError("audit_lemma1: incomplete audit, no mu estimate at or below i-2 for "
                          "kappa grid points i in {" + gaps + "}");
    return out;
}

std::vector<Lemma2Point> lemma2_points(const MomentParams& params, std::int64_t n, int p,
                                       double eps, double c_delta,
                                       const std::vector<std::int64_t>& i_grid) {
    check_params_positive(params, "lemma2_points");
    if (n < 4) throw ConfigError("lemma2_points: n must be >= 4");
    if (p < 1) throw ConfigError("lemma2_points: p must be >= 1");
    if (!(eps > 0.0)) throw ConfigError("lemma2_points: eps must be > 0");
    if (!(c_delta > 0.0)) throw ConfigError("lemma2_points: c_delta must be > 0");
    if (i_grid.empty()) throw ConfigError("lemma2_points: incomplete audit, empty i grid");
    const double log_pn = std::log(static_cast<double>(p) * static_cast<double>(n));
    std::vector<Lemma2Point> out;
    out.reserve(i_grid.size());
    for (std::int64_t i : i_grid) {
        if (2 * i <= n + 2 || i > n)
            throw ConfigError("lemma2_points: grid index " + std::to_string(i) +
                              " outside (n/2 + 1, n]");
        Lemma2Point pt;
        pt.i = i;
        const double tail = params.sigma_lower * params.sigma_lower * static_cast<double>(n - i) -
                            params.sigma_upper * params.sigma_upper;
        pt.eps_i = std::sqrt(eps * eps + std::max(tail, 0.0));
        pt.delta_i = c_delta * pt.eps_i * std::sqrt(log_pn);
        out.push_back(pt);
    }
    return out;
}

Lemma2Audit audit_lemma2_rhs(const MomentParams& params, std::int64_t n, int p, double eps,
                             double c_delta,
                             const std::vector<std::pair<std::int64_t, double>>& kappa_im1) {
    if (kappa_im1.empty())
        throw ConfigError("audit_lemma2_rhs: incomplete audit, no kappa estimates supplied");
    std::vector<std::int64_t> grid;
    grid.reserve(kappa_im1.size());
    for (const auto& [i, value] : kappa_im1) grid.push_back(i);
    const std::vector<Lemma2Point> pts = lemma2_points(params, n, p, eps, c_delta, grid);

    const double lep = log_ep(p);
    const double sl = params.sigma_lower;
    const double su = params.sigma_upper;
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    Lemma2Audit out;
    out.term_smoothing = (params.nu3 * std::pow(lep, 1.5) / (sl * sl * sl) +
                          eps * lep / params.sigma_min) /
                         sqrt_n;
    out.term_tail = params.nu3 / (static_cast<double>(p) * static_cast<double>(n)) *
                    (su / (eps * eps * eps * sl) + 1.0 / (eps * sl * sl));
    for (std::size_t q = 0; q < kappa_im1.size(); ++q)
        out.sup_ratio = std::max(out.sup_ratio, kappa_im1[q].second / pts[q].eps_i);
    out.term_kappa = params.nu3 *
                     (su / (eps * eps * sl) +
                      std::log1p(sqrt_n * sl / eps) / (sl * sl)) *
                     std::pow(lep, 1.5) * out.sup_ratio;
    out.rhs = out.term_smoothing + out.term_tail + out.term_kappa;
    return out;
}

}  // namespace mdclt
