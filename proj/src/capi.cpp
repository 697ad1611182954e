// C interface of the shared library; thin adapters over the C++ core with
// exceptions mapped to status codes and a thread-local error message.

#include "mdclt.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "blocking.hpp"
#include "bounds.hpp"
#include "core.hpp"
#include "distance.hpp"
#include "fitting.hpp"
#include "gaussian.hpp"
#include "params.hpp"
#include "parallel.hpp"
#include "procgen.hpp"
#include "rng.hpp"

struct mdclt_spec {
    mdclt::ProcessSpec impl;
};

struct mdclt_batch {
    std::shared_ptr<mdclt::SampleBatch> impl;
};

struct mdclt_family {
    mdclt::RectangleFamily impl;
};

namespace {

thread_local std::string t_last_error;

mdclt_status fail(mdclt_status code, const char* what) {
    t_last_error = what;
    return code;
}

template <typename Fn>
mdclt_status guarded(Fn&& fn) {
    try {
        fn();
        return MDCLT_OK;
    } catch (const mdclt::ConfigError& e) {
        return fail(MDCLT_ERR_CONFIG, e.what());
    } catch (const mdclt::NumericError& e) {
        return fail(MDCLT_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MDCLT_ERR_NUMERIC, "out of memory");
    } catch (const std::exception& e) {
        return fail(MDCLT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MDCLT_ERR_INTERNAL, "unknown error");
    }
}

mdclt_status require(bool ok, const char* what) {
    return ok ? MDCLT_OK : fail(MDCLT_ERR_CONFIG, what);
}

mdclt::Innovation to_innovation(mdclt_innovation law, double rate) {
    mdclt::Innovation innovation;
    switch (law) {
        case MDCLT_INNOVATION_GAUSSIAN:
            innovation.law = mdclt::InnovationLaw::gaussian;
            break;
        case MDCLT_INNOVATION_RADEMACHER:
            innovation.law = mdclt::InnovationLaw::rademacher;
            break;
        case MDCLT_INNOVATION_CENTERED_EXPONENTIAL:
            innovation.law = mdclt::InnovationLaw::centered_exponential;
            break;
        default:
            throw mdclt::ConfigError("unknown innovation law code");
    }
    innovation.rate = rate;
    return innovation;
}

mdclt::MomentParams to_params(const mdclt_moment_params& mp) {
    mdclt::MomentParams out;
    out.sigma_min = mp.sigma_min;
    out.sigma_lower = mp.sigma_lower;
    out.sigma_upper = mp.sigma_upper;
    out.nu1 = mp.nu1;
    out.nu3 = mp.nu3;
    out.nu1_se = mp.nu1_se;
    out.nu3_se = mp.nu3_se;
    out.n = mp.n;
    out.m = mp.m;
    return out;
}

void copy_estimate(const mdclt::DistanceEstimate& est, mdclt_estimate* out) {
    out->value = est.value;
    out->se = est.se;
    out->n_rect = est.n_rect;
    out->r_x = est.r_x;
    out->r_y = est.r_y;
    out->kind = est.kind == mdclt::EstimateKind::mu ? MDCLT_KIND_MU : MDCLT_KIND_KAPPA;
}

void copy_matrix(const Eigen::MatrixXd& m, double* out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
}

mdclt::FamilyConfig to_family_config(const mdclt_family_config* cfg) {
    mdclt::FamilyConfig out;
    if (cfg) {
        out.grid_levels = cfg->grid_levels;
        out.grid_cap = cfg->grid_cap;
        out.random_corners = cfg->random_corners;
        out.diag_levels = cfg->diag_levels;
        out.include_diagonal = cfg->include_diagonal != 0;
        out.seed = cfg->seed;
    }
    return out;
}

}  // namespace

extern "C" {

const char* mdclt_last_error(void) {
    return t_last_error.c_str();
}

void mdclt_set_threads(int32_t n) {
    mdclt::set_threads(n);
}

int32_t mdclt_get_threads(void) {
    return mdclt::threads();
}

void mdclt_set_memory_cap(uint64_t bytes) {
    mdclt::set_memory_cap(bytes);
}

uint64_t mdclt_derive_seed(uint64_t master, uint64_t stream_id) {
    return mdclt::derive_seed(master, stream_id);
}

mdclt_family_config mdclt_family_config_default(void) {
    const mdclt::FamilyConfig cfg;
    mdclt_family_config out;
    out.grid_levels = cfg.grid_levels;
    out.grid_cap = cfg.grid_cap;
    out.random_corners = cfg.random_corners;
    out.diag_levels = cfg.diag_levels;
    out.include_diagonal = cfg.include_diagonal ? 1 : 0;
    out.seed = cfg.seed;
    return out;
}

/* ---- spec ------------------------------------------------------------- */

mdclt_status mdclt_spec_create_ma(int32_t p, int32_t m, const double* coeffs,
                                  mdclt_innovation law, double rate, mdclt_spec** out) {
    if (auto st = require(out && coeffs, "null pointer argument")) return st;
    return guarded([&] {
        std::vector<Eigen::MatrixXd> mats;
        mats.reserve(static_cast<std::size_t>(m) + 1);
        for (int a = 0; a <= m; ++a) {
            Eigen::MatrixXd mat(p, p);
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j)
                    mat(i, j) = coeffs[(static_cast<std::size_t>(a) * p + i) * p + j];
            mats.push_back(std::move(mat));
        }
        *out = new mdclt_spec{mdclt::make_ma_process(p, m, std::move(mats),
                                                     to_innovation(law, rate))};
    });
}

mdclt_status mdclt_spec_from_json(const char* json_text, mdclt_spec** out) {
    if (auto st = require(out && json_text, "null pointer argument")) return st;
    return guarded([&] { *out = new mdclt_spec{mdclt::spec_from_json(json_text)}; });
}

void mdclt_spec_free(mdclt_spec* spec) {
    delete spec;
}

mdclt_status mdclt_spec_dims(const mdclt_spec* spec, int32_t* p, int32_t* m) {
    if (auto st = require(spec && p && m, "null pointer argument")) return st;
    *p = spec->impl.p;
    *m = spec->impl.m;
    return MDCLT_OK;
}

mdclt_status mdclt_spec_to_json(const mdclt_spec* spec, char* buf, size_t buf_len,
                                size_t* needed) {
    if (auto st = require(spec && needed, "null pointer argument")) return st;
    return guarded([&] {
        const std::string text = mdclt::spec_to_json(spec->impl);
        *needed = text.size() + 1;
        if (buf && buf_len >= text.size() + 1) std::memcpy(buf, text.c_str(), text.size() + 1);
    });
}

mdclt_status mdclt_spec_digest(const mdclt_spec* spec, uint64_t* out) {
    if (auto st = require(spec && out, "null pointer argument")) return st;
    return guarded([&] { *out = mdclt::spec_digest(spec->impl); });
}

mdclt_status mdclt_spec_lag_cov(const mdclt_spec* spec, int32_t lag, double* out) {
    if (auto st = require(spec && out, "null pointer argument")) return st;
    return guarded([&] {
        if (lag < 0) throw mdclt::ConfigError("lag must be >= 0");
        const int p = spec->impl.p;
        if (lag > spec->impl.m) {
            std::memset(out, 0, static_cast<std::size_t>(p) * p * sizeof(double));
            return;
        }
        copy_matrix(spec->impl.lag_covs[static_cast<std::size_t>(lag)], out);
    });
}

mdclt_status mdclt_spec_sum_cov(const mdclt_spec* spec, int64_t i, int64_t j, double* out) {
    if (auto st = require(spec && out, "null pointer argument")) return st;
    return guarded([&] { copy_matrix(mdclt::sum_covariance(spec->impl, i, j), out); });
}

/* ---- sampling --------------------------------------------------------- */

mdclt_status mdclt_sample_paths(const mdclt_spec* spec, int64_t n, int64_t R, uint64_t seed,
                                mdclt_batch** out) {
    if (auto st = require(spec && out, "null pointer argument")) return st;
    return guarded([&] { *out = new mdclt_batch{mdclt::sample_paths(spec->impl, n, R, seed)}; });
}

mdclt_status mdclt_sample_sums(const mdclt_spec* spec, int64_t n, int64_t R, uint64_t seed,
                               double* out) {
    if (auto st = require(spec && out, "null pointer argument")) return st;
    return guarded([&] { mdclt::sample_sums(spec->impl, n, R, seed, out); });
}

void mdclt_batch_free(mdclt_batch* batch) {
    delete batch;
}

mdclt_status mdclt_batch_dims(const mdclt_batch* batch, int64_t* R, int64_t* n, int32_t* p) {
    if (auto st = require(batch && R && n && p, "null pointer argument")) return st;
    *R = batch->impl->replicates();
    *n = batch->impl->length();
    *p = batch->impl->dim();
    return MDCLT_OK;
}

mdclt_status mdclt_batch_seed(const mdclt_batch* batch, uint64_t* seed) {
    if (auto st = require(batch && seed, "null pointer argument")) return st;
    *seed = batch->impl->master_seed();
    return MDCLT_OK;
}

mdclt_status mdclt_batch_block_m(const mdclt_batch* batch, int32_t* block_m) {
    if (auto st = require(batch && block_m, "null pointer argument")) return st;
    *block_m = batch->impl->block_m();
    return MDCLT_OK;
}

mdclt_status mdclt_batch_data(const mdclt_batch* batch, const double** data) {
    if (auto st = require(batch && data, "null pointer argument")) return st;
    *data = batch->impl->data();
    return MDCLT_OK;
}

mdclt_status mdclt_batch_prefix_sum(const mdclt_batch* batch, int64_t i, int64_t j,
                                    double* out) {
    if (auto st = require(batch && out, "null pointer argument")) return st;
    return guarded([&] { batch->impl->prefix_sum(i, j, out); });
}

mdclt_status mdclt_batch_spec(const mdclt_batch* batch, mdclt_spec** out) {
    if (auto st = require(batch && out, "null pointer argument")) return st;
    return guarded([&] {
        if (!batch->impl->spec()) throw mdclt::ConfigError("batch has no spec attached");
        *out = new mdclt_spec{*batch->impl->spec()};
    });
}

mdclt_status mdclt_batch_save(const mdclt_batch* batch, const char* path) {
    if (auto st = require(batch && path, "null pointer argument")) return st;
    return guarded([&] { mdclt::save_batch(*batch->impl, path); });
}

mdclt_status mdclt_batch_load(const char* path, mdclt_batch** out) {
    if (auto st = require(path && out, "null pointer argument")) return st;
    return guarded([&] { *out = new mdclt_batch{mdclt::load_batch(path)}; });
}

/* ---- blocking ---------------------------------------------------------- */

mdclt_status mdclt_block_reduce(const mdclt_batch* batch, int32_t m, int32_t drop_remainder,
                                mdclt_batch** out) {
    if (auto st = require(batch && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = new mdclt_batch{mdclt::block_reduce(*batch->impl, m, drop_remainder != 0)};
    });
}

mdclt_status mdclt_blocked_length(int64_t n, int32_t m, int64_t* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] { *out = mdclt::blocked_length(n, m); });
}

mdclt_status mdclt_blocked_lag_cov(const mdclt_spec* spec, int32_t m, int64_t n, int64_t i,
                                   int64_t lag, double* out) {
    if (auto st = require(spec && out, "null pointer argument")) return st;
    return guarded([&] { copy_matrix(mdclt::blocked_lag_cov(spec->impl, m, n, i, lag), out); });
}

mdclt_status mdclt_blocked_sum_cov(const mdclt_spec* spec, int32_t m, int64_t n, int64_t i,
                                   int64_t j, double* out) {
    if (auto st = require(spec && out, "null pointer argument")) return st;
    return guarded(
        [&] { copy_matrix(mdclt::blocked_sum_covariance(spec->impl, m, n, i, j), out); });
}

mdclt_status mdclt_extract_sigmas_blocked(const mdclt_spec* spec, int64_t n, int32_t m,
                                          double* sigma_min, double* sigma_lower,
                                          double* sigma_upper) {
    if (auto st = require(spec && sigma_min && sigma_lower && sigma_upper,
                          "null pointer argument"))
        return st;
    return guarded([&] {
        const auto sig = mdclt::extract_sigmas_blocked(spec->impl, n, m);
        *sigma_min = sig.sigma_min;
        *sigma_lower = sig.sigma_lower;
        *sigma_upper = sig.sigma_upper;
    });
}

mdclt_status mdclt_estimate_nu_blocked(const mdclt_spec* spec, int64_t n, int32_t m,
                                       int64_t n_mc, uint64_t seed, double* nu1, double* nu3,
                                       double* nu1_se, double* nu3_se) {
    if (auto st = require(spec && nu1 && nu3 && nu1_se && nu3_se, "null pointer argument"))
        return st;
    return guarded([&] {
        const auto nu = mdclt::estimate_nu_blocked(spec->impl, n, m, n_mc, seed);
        *nu1 = nu.nu1;
        *nu3 = nu.nu3;
        *nu1_se = nu.nu1_se;
        *nu3_se = nu.nu3_se;
    });
}

mdclt_status mdclt_verify_m_dependence(const mdclt_batch* batch, int32_t lag, int32_t window,
                                       int32_t n_perm, uint64_t seed, double* statistic,
                                       double* null_q95, int32_t* pass) {
    if (auto st = require(batch && statistic && null_q95 && pass, "null pointer argument"))
        return st;
    return guarded([&] {
        const auto check = mdclt::verify_m_dependence(*batch->impl, lag, n_perm, seed, window);
        *statistic = check.statistic;
        *null_q95 = check.null_q95;
        *pass = check.pass ? 1 : 0;
    });
}

/* ---- Gaussian analog ----------------------------------------------------- */

mdclt_status mdclt_gaussian_sample_sum(const double* cov, int32_t p, int64_t R, uint64_t seed,
                                       double* out) {
    if (auto st = require(cov && out, "null pointer argument")) return st;
    return guarded([&] {
        if (p < 1) throw mdclt::ConfigError("p must be >= 1");
        Eigen::MatrixXd c(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) c(i, j) = cov[static_cast<std::size_t>(i) * p + j];
        mdclt::sample_sum_gaussian(c, R, seed, out);
    });
}

mdclt_status mdclt_nazarov_bound(double delta, double min_marginal_var, int32_t p, double c,
                                 double* out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] { *out = mdclt::nazarov_bound(delta, min_marginal_var, p, c); });
}

mdclt_status mdclt_phi_smoothed(const double* x, const double* r, int32_t p, double eps,
                                double* out) {
    if (auto st = require(x && r && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = mdclt::phi_smoothed(Eigen::Map<const Eigen::VectorXd>(x, p),
                                   Eigen::Map<const Eigen::VectorXd>(r, p), eps);
    });
}

/* ---- assumption constants ------------------------------------------------ */

mdclt_status mdclt_extract_sigmas(const mdclt_spec* spec, int64_t n, int32_t m,
                                  double* sigma_min, double* sigma_lower, double* sigma_upper) {
    if (auto st = require(spec && sigma_min && sigma_lower && sigma_upper,
                          "null pointer argument"))
        return st;
    return guarded([&] {
        const auto sig = mdclt::extract_sigmas(spec->impl, n, m);
        *sigma_min = sig.sigma_min;
        *sigma_lower = sig.sigma_lower;
        *sigma_upper = sig.sigma_upper;
    });
}

mdclt_status mdclt_estimate_nu(const mdclt_spec* spec, int64_t n_mc, uint64_t seed, double* nu1,
                               double* nu3, double* nu1_se, double* nu3_se) {
    if (auto st = require(spec && nu1 && nu3 && nu1_se && nu3_se, "null pointer argument"))
        return st;
    return guarded([&] {
        const auto nu = mdclt::estimate_nu(spec->impl, n_mc, seed);
        *nu1 = nu.nu1;
        *nu3 = nu.nu3;
        *nu1_se = nu.nu1_se;
        *nu3_se = nu.nu3_se;
    });
}

/* ---- distance estimators -------------------------------------------------- */

mdclt_status mdclt_family_build(const double* xs, int64_t rx, const double* ys, int64_t ry,
                                int32_t p, const mdclt_family_config* cfg, mdclt_family** out) {
    if (auto st = require(out != nullptr, "null pointer argument")) return st;
    return guarded([&] {
        *out = new mdclt_family{
            mdclt::build_rectangle_family(xs, rx, ys, ry, p, to_family_config(cfg))};
    });
}

void mdclt_family_free(mdclt_family* family) {
    delete family;
}

mdclt_status mdclt_family_size(const mdclt_family* family, int64_t* out) {
    if (auto st = require(family && out, "null pointer argument")) return st;
    *out = family->impl.size();
    return MDCLT_OK;
}

mdclt_status mdclt_family_corner(const mdclt_family* family, int64_t idx, double* out) {
    if (auto st = require(family && out, "null pointer argument")) return st;
    return guarded([&] {
        if (idx < 0 || idx >= family->impl.size())
            throw mdclt::ConfigError("corner index out of range");
        std::memcpy(out, family->impl.corner(idx),
                    static_cast<std::size_t>(family->impl.dim()) * sizeof(double));
    });
}

mdclt_status mdclt_estimate_mu(const double* xs, int64_t rx, const double* ys, int64_t ry,
                               int32_t p, const mdclt_family* family, mdclt_estimate* out) {
    if (auto st = require(xs && ys && family && out, "null pointer argument")) return st;
    return guarded(
        [&] { copy_estimate(mdclt::estimate_mu(xs, rx, ys, ry, p, family->impl), out); });
}

mdclt_status mdclt_estimate_mu_bootstrap(const double* xs, int64_t rx, const double* ys,
                                         int64_t ry, int32_t p, const mdclt_family* family,
                                         int32_t n_boot, uint64_t seed, mdclt_estimate* out) {
    if (auto st = require(xs && ys && family && out, "null pointer argument")) return st;
    return guarded([&] {
        copy_estimate(
            mdclt::estimate_mu_bootstrap(xs, rx, ys, ry, p, family->impl, n_boot, seed), out);
    });
}

mdclt_status mdclt_estimate_kappa(const double* xs, int64_t r, int32_t p, double delta,
                                  const mdclt_family* family, mdclt_estimate* out) {
    if (auto st = require(xs && family && out, "null pointer argument")) return st;
    return guarded(
        [&] { copy_estimate(mdclt::estimate_kappa(xs, r, p, delta, family->impl), out); });
}

mdclt_status mdclt_band_membership(const double* x, const double* corner, int32_t p,
                                   double delta, int32_t* out) {
    if (auto st = require(x && corner && out, "null pointer argument")) return st;
    return guarded([&] {
        const mdclt::Rectangle rect{Eigen::Map<const Eigen::VectorXd>(corner, p), delta};
        *out = mdclt::band_membership(Eigen::Map<const Eigen::VectorXd>(x, p), rect) ? 1 : 0;
    });
}

mdclt_status mdclt_smoothing_f(const double* x, const double* r, int32_t p, double delta,
                               double eps, double* out) {
    if (auto st = require(x && r && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = mdclt::smoothing_f(Eigen::Map<const Eigen::VectorXd>(x, p),
                                  Eigen::Map<const Eigen::VectorXd>(r, p), delta, eps);
    });
}

mdclt_status mdclt_grad_f_l1(const double* x, const double* r, int32_t p, double delta,
                             double eps, double* out) {
    if (auto st = require(x && r && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = mdclt::grad_f_l1(Eigen::Map<const Eigen::VectorXd>(x, p),
                                Eigen::Map<const Eigen::VectorXd>(r, p), delta, eps);
    });
}

/* ---- bounds ---------------------------------------------------------------- */

mdclt_status mdclt_theorem_bound(const mdclt_moment_params* params, double n, int32_t p,
                                 double c, double* out) {
    if (auto st = require(params && out, "null pointer argument")) return st;
    return guarded([&] { *out = mdclt::theorem_bound(to_params(*params), n, p, c); });
}

mdclt_status mdclt_corollary_bound(const mdclt_moment_params* params, double n, int32_t m,
                                   int32_t p, double c, double* out) {
    if (auto st = require(params && out, "null pointer argument")) return st;
    return guarded([&] { *out = mdclt::corollary_bound(to_params(*params), n, m, p, c); });
}

mdclt_status mdclt_epsilon_star(const mdclt_moment_params* params, double n, int32_t p, double c,
                                double* out, int32_t* clamped) {
    if (auto st = require(params && out && clamped, "null pointer argument")) return st;
    return guarded([&] {
        const auto eps = mdclt::epsilon_star(to_params(*params), n, p, c);
        *out = eps.value;
        *clamped = eps.clamped ? 1 : 0;
    });
}

/* ---- audits ----------------------------------------------------------------- */

mdclt_status mdclt_audit_lemma1(const int64_t* mu_i, const double* mu_hat, int64_t n_mu,
                                const int64_t* kappa_i, const double* kappa_hat,
                                int64_t n_kappa, double delta,
                                const mdclt_moment_params* params, int32_t p, double* c1,
                                int64_t* argmax_i) {
    if (auto st = require(params && c1 && argmax_i, "null pointer argument")) return st;
    return guarded([&] {
        std::vector<std::pair<std::int64_t, double>> mu_grid, kappa_grid;
        for (int64_t q = 0; q < n_mu; ++q) mu_grid.emplace_back(mu_i[q], mu_hat[q]);
        for (int64_t q = 0; q < n_kappa; ++q) kappa_grid.emplace_back(kappa_i[q], kappa_hat[q]);
        const auto audit = mdclt::audit_lemma1(std::move(mu_grid), kappa_grid, delta,
                                               to_params(*params), p);
        *c1 = audit.c1;
        *argmax_i = audit.argmax_i;
    });
}

mdclt_status mdclt_audit_lemma2_points(const mdclt_moment_params* params, int64_t n, int32_t p,
                                       double eps, double c_delta, const int64_t* i_grid,
                                       int64_t n_grid, double* eps_i, double* delta_i) {
    if (auto st = require(params && i_grid && eps_i && delta_i, "null pointer argument"))
        return st;
    return guarded([&] {
        const std::vector<std::int64_t> grid(i_grid, i_grid + n_grid);
        const auto pts = mdclt::lemma2_points(to_params(*params), n, p, eps, c_delta, grid);
        for (std::size_t q = 0; q < pts.size(); ++q) {
            eps_i[q] = pts[q].eps_i;
            delta_i[q] = pts[q].delta_i;
        }
    });
}

mdclt_status mdclt_audit_lemma2_rhs(const mdclt_moment_params* params, int64_t n, int32_t p,
                                    double eps, double c_delta, const int64_t* i_grid,
                                    const double* kappa_im1, int64_t n_grid, double* rhs,
                                    double* term_smoothing, double* term_tail,
                                    double* term_kappa) {
    if (auto st = require(params && i_grid && kappa_im1 && rhs, "null pointer argument"))
        return st;
    return guarded([&] {
        std::vector<std::pair<std::int64_t, double>> pairs;
        for (int64_t q = 0; q < n_grid; ++q) pairs.emplace_back(i_grid[q], kappa_im1[q]);
        const auto audit = mdclt::audit_lemma2_rhs(to_params(*params), n, p, eps, c_delta, pairs);
        *rhs = audit.rhs;
        if (term_smoothing) *term_smoothing = audit.term_smoothing;
        if (term_tail) *term_tail = audit.term_tail;
        if (term_kappa) *term_kappa = audit.term_kappa;
    });
}

/* ---- rate fit ----------------------------------------------------------------- */

mdclt_status mdclt_fit_loglog(const double* n_eff, const double* mu_hat, const double* se,
                              int64_t n_points, double* slope, double* intercept, double* r2,
                              int32_t* n_used) {
    if (auto st = require(n_eff && mu_hat && slope && intercept && r2 && n_used,
                          "null pointer argument"))
        return st;
    return guarded([&] {
        std::vector<mdclt::RatePoint> pts(static_cast<std::size_t>(n_points));
        for (int64_t q = 0; q < n_points; ++q) {
            pts[q].n_eff = n_eff[q];
            pts[q].mu_hat = mu_hat[q];
            pts[q].se = se ? se[q] : 0.0;
        }
        const auto fit = mdclt::fit_loglog_slope(pts);
        *slope = fit.slope;
        *intercept = fit.intercept;
        *r2 = fit.r2;
        *n_used = static_cast<int32_t>(fit.used_n_eff.size());
    });
}

} /* extern "C" */
