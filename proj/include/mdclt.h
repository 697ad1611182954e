/*
 * mdclt -- simulation and verification toolkit for high-dimensional CLT
 * behaviour of m-dependent random vectors over hyper-rectangles.
 *
 * C interface of the shared library. All functions return mdclt_status;
 * results come back through out-parameters. On failure a thread-local
 * message is available via mdclt_last_error(). Opaque handles are freed
 * with their matching *_free function.
 *
 * Conventions, shared with the CLI and the on-disk formats:
 *  - interval sums S X_{[i,j]} use closed 1-based intervals;
 *  - arrays of samples are replicate-major (row r is one p-vector);
 *  - matrices are row-major p x p;
 *  - absolute constants from the theory default to C = 1 and are always
 *    explicit parameters; logs are natural with log(e x) = 1 + ln x;
 *  - replicate r of a run with master seed s is generated from the derived
 *    stream (s, r), so results do not depend on thread count.
 */

#ifndef MDCLT_H
#define MDCLT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mdclt_status {
    MDCLT_OK = 0,
    MDCLT_ERR_INTERNAL = 1, /* unexpected failure */
    MDCLT_ERR_CONFIG = 2,   /* bad arguments, shapes, indices, files */
    MDCLT_ERR_NUMERIC = 3   /* degeneracy, non-finite values, capacity */
} mdclt_status;

typedef enum mdclt_innovation {
    MDCLT_INNOVATION_GAUSSIAN = 0,
    MDCLT_INNOVATION_RADEMACHER = 1,
    MDCLT_INNOVATION_CENTERED_EXPONENTIAL = 2
} mdclt_innovation;

typedef enum mdclt_estimate_kind { MDCLT_KIND_MU = 0, MDCLT_KIND_KAPPA = 1 } mdclt_estimate_kind;

typedef struct mdclt_spec mdclt_spec;     /* m-dependent moving-average process */
typedef struct mdclt_batch mdclt_batch;   /* replicated sample paths + prefix tables */
typedef struct mdclt_family mdclt_family; /* finite rectangle-corner family */

typedef struct mdclt_estimate {
    double value;   /* in [0,1] */
    double se;      /* worst-case binomial unless bootstrapped */
    int64_t n_rect; /* family size */
    int64_t r_x;
    int64_t r_y;
    int32_t kind; /* mdclt_estimate_kind */
} mdclt_estimate;

typedef struct mdclt_moment_params {
    double sigma_min;
    double sigma_lower;
    double sigma_upper;
    double nu1;
    double nu3;
    double nu1_se;
    double nu3_se;
    int64_t n;
    int32_t m;
} mdclt_moment_params;

typedef struct mdclt_family_config {
    int32_t grid_levels;    /* per-coordinate quantile levels G */
    int64_t grid_cap;       /* product grid used only if G^p <= grid_cap */
    int32_t random_corners; /* fallback corner count M */
    int32_t diag_levels;    /* diagonal family r = t 1 levels */
    int32_t include_diagonal;
    uint64_t seed;
} mdclt_family_config;

/* ---- diagnostics & global knobs ------------------------------------- */

const char* mdclt_last_error(void);
void mdclt_set_threads(int32_t n); /* 0 = hardware default */
int32_t mdclt_get_threads(void);
void mdclt_set_memory_cap(uint64_t bytes); /* 0 = default (2 GiB) */
uint64_t mdclt_derive_seed(uint64_t master, uint64_t stream_id);
mdclt_family_config mdclt_family_config_default(void);

/* ---- process specs and exact covariances ----------------------------- */

/* coeffs: (m+1) row-major p x p matrices A_0..A_m, concatenated. rate is
 * only meaningful for the centered-exponential law. */
mdclt_status mdclt_spec_create_ma(int32_t p, int32_t m, const double* coeffs,
                                  mdclt_innovation law, double rate, mdclt_spec** out);
mdclt_status mdclt_spec_from_json(const char* json_text, mdclt_spec** out);
void mdclt_spec_free(mdclt_spec* spec);
mdclt_status mdclt_spec_dims(const mdclt_spec* spec, int32_t* p, int32_t* m);
/* Canonical spec JSON; buffer of size buf_len receives a NUL-terminated
 * string, required length (incl. NUL) in *needed. */
mdclt_status mdclt_spec_to_json(const mdclt_spec* spec, char* buf, size_t buf_len,
                                size_t* needed);
mdclt_status mdclt_spec_digest(const mdclt_spec* spec, uint64_t* out);
/* Gamma_lag = Cov(X_i, X_{i+lag}); zero matrix for lag > m. */
mdclt_status mdclt_spec_lag_cov(const mdclt_spec* spec, int32_t lag, double* out /* p*p */);
/* Var[S X_{[i,j]}], exact. */
mdclt_status mdclt_spec_sum_cov(const mdclt_spec* spec, int64_t i, int64_t j,
                                double* out /* p*p */);

/* ---- sampling and batch containers ----------------------------------- */

mdclt_status mdclt_sample_paths(const mdclt_spec* spec, int64_t n, int64_t R, uint64_t seed,
                                mdclt_batch** out);
/* Streaming S X_{[1,n]} per replicate; bit-identical to materializing the
 * batch and querying prefix_sum(1, n). out is R x p. */
mdclt_status mdclt_sample_sums(const mdclt_spec* spec, int64_t n, int64_t R, uint64_t seed,
                               double* out);
void mdclt_batch_free(mdclt_batch* batch);
mdclt_status mdclt_batch_dims(const mdclt_batch* batch, int64_t* R, int64_t* n, int32_t* p);
mdclt_status mdclt_batch_seed(const mdclt_batch* batch, uint64_t* seed);
mdclt_status mdclt_batch_block_m(const mdclt_batch* batch, int32_t* block_m);
/* Read-only view of the replicate-major R*n*p data. */
mdclt_status mdclt_batch_data(const mdclt_batch* batch, const double** data);
/* S X_{[i,j]} for every replicate from the prefix tables; out is R x p. */
mdclt_status mdclt_batch_prefix_sum(const mdclt_batch* batch, int64_t i, int64_t j, double* out);
mdclt_status mdclt_batch_spec(const mdclt_batch* batch, mdclt_spec** out /* caller frees */);
/* Flat binary container + JSON sidecar at path and path.json. */
mdclt_status mdclt_batch_save(const mdclt_batch* batch, const char* path);
mdclt_status mdclt_batch_load(const char* path, mdclt_batch** out);

/* ---- blocking (m -> 1 reduction) -------------------------------------- */

/* X'_i = (1/m) S X_{((i-1)m, im]}, last block absorbs the remainder;
 * drop_remainder != 0 switches to the benchmarking variant that discards
 * the tail instead. */
mdclt_status mdclt_block_reduce(const mdclt_batch* batch, int32_t m, int32_t drop_remainder,
                                mdclt_batch** out);
mdclt_status mdclt_blocked_length(int64_t n, int32_t m, int64_t* out);
/* Exact Cov(X'_i, X'_{i+lag}) through the block linear map. */
mdclt_status mdclt_blocked_lag_cov(const mdclt_spec* spec, int32_t m, int64_t n, int64_t i,
                                   int64_t lag, double* out /* p*p */);
mdclt_status mdclt_blocked_sum_cov(const mdclt_spec* spec, int32_t m, int64_t n, int64_t i,
                                   int64_t j, double* out /* p*p */);
mdclt_status mdclt_extract_sigmas_blocked(const mdclt_spec* spec, int64_t n, int32_t m,
                                          double* sigma_min, double* sigma_lower,
                                          double* sigma_upper);
mdclt_status mdclt_estimate_nu_blocked(const mdclt_spec* spec, int64_t n, int32_t m,
                                       int64_t n_mc, uint64_t seed, double* nu1, double* nu3,
                                       double* nu1_se, double* nu3_se);
/* Max |empirical cross-covariance entry| at lags (lag, lag+window] and its
 * permutation-null 95th percentile; pass = statistic <= q95. */
mdclt_status mdclt_verify_m_dependence(const mdclt_batch* batch, int32_t lag, int32_t window,
                                       int32_t n_perm, uint64_t seed, double* statistic,
                                       double* null_q95, int32_t* pass);

/* ---- Gaussian analog --------------------------------------------------- */

/* R draws of N(0, cov) via symmetric eigendecomposition (negative
 * eigenvalues clipped at zero); out is R x p. */
mdclt_status mdclt_gaussian_sample_sum(const double* cov, int32_t p, int64_t R, uint64_t seed,
                                       double* out);
/* C delta sqrt(log(ep) / min_marginal_var). */
mdclt_status mdclt_nazarov_bound(double delta, double min_marginal_var, int32_t p, double c,
                                 double* out);
/* prod_k Phi((r_k - x_k)/eps). */
mdclt_status mdclt_phi_smoothed(const double* x, const double* r, int32_t p, double eps,
                                double* out);

/* ---- assumption constants ---------------------------------------------- */

mdclt_status mdclt_extract_sigmas(const mdclt_spec* spec, int64_t n, int32_t m,
                                  double* sigma_min, double* sigma_lower, double* sigma_upper);
mdclt_status mdclt_estimate_nu(const mdclt_spec* spec, int64_t n_mc, uint64_t seed, double* nu1,
                               double* nu3, double* nu1_se, double* nu3_se);

/* ---- distance estimators ------------------------------------------------ */

/* Build the corner family from pooled samples; ys may be NULL with ry = 0. */
mdclt_status mdclt_family_build(const double* xs, int64_t rx, const double* ys, int64_t ry,
                                int32_t p, const mdclt_family_config* cfg, mdclt_family** out);
void mdclt_family_free(mdclt_family* family);
mdclt_status mdclt_family_size(const mdclt_family* family, int64_t* out);
mdclt_status mdclt_family_corner(const mdclt_family* family, int64_t idx,
                                 double* out /* p */);
mdclt_status mdclt_estimate_mu(const double* xs, int64_t rx, const double* ys, int64_t ry,
                               int32_t p, const mdclt_family* family, mdclt_estimate* out);
mdclt_status mdclt_estimate_mu_bootstrap(const double* xs, int64_t rx, const double* ys,
                                         int64_t ry, int32_t p, const mdclt_family* family,
                                         int32_t n_boot, uint64_t seed, mdclt_estimate* out);
mdclt_status mdclt_estimate_kappa(const double* xs, int64_t r, int32_t p, double delta,
                                  const mdclt_family* family, mdclt_estimate* out);
mdclt_status mdclt_band_membership(const double* x, const double* corner, int32_t p,
                                   double delta, int32_t* out);
mdclt_status mdclt_smoothing_f(const double* x, const double* r, int32_t p, double delta,
                               double eps, double* out);
mdclt_status mdclt_grad_f_l1(const double* x, const double* r, int32_t p, double delta,
                             double eps, double* out);

/* ---- bound formulas ------------------------------------------------------ */

/* n is a real number: the corollary substitutes n_eff = n/m without
 * flooring. */
mdclt_status mdclt_theorem_bound(const mdclt_moment_params* params, double n, int32_t p,
                                 double c, double* out);
mdclt_status mdclt_corollary_bound(const mdclt_moment_params* params, double n, int32_t m,
                                   int32_t p, double c, double* out);
mdclt_status mdclt_epsilon_star(const mdclt_moment_params* params, double n, int32_t p, double c,
                                double* out, int32_t* clamped);

/* ---- induction-lemma audits --------------------------------------------- */

/* Minimal feasible constant of the kappa-from-mu induction inequality. */
mdclt_status mdclt_audit_lemma1(const int64_t* mu_i, const double* mu_hat, int64_t n_mu,
                                const int64_t* kappa_i, const double* kappa_hat,
                                int64_t n_kappa, double delta,
                                const mdclt_moment_params* params, int32_t p, double* c1,
                                int64_t* argmax_i);
/* Evaluation points (eps_i, delta_i) for the mu-from-kappa inequality; the
 * caller estimates kappa_{i-1}(delta_i) and feeds it back below. */
mdclt_status mdclt_audit_lemma2_points(const mdclt_moment_params* params, int64_t n, int32_t p,
                                       double eps, double c_delta, const int64_t* i_grid,
                                       int64_t n_grid, double* eps_i, double* delta_i);
mdclt_status mdclt_audit_lemma2_rhs(const mdclt_moment_params* params, int64_t n, int32_t p,
                                    double eps, double c_delta, const int64_t* i_grid,
                                    const double* kappa_im1, int64_t n_grid, double* rhs,
                                    double* term_smoothing, double* term_tail,
                                    double* term_kappa);

/* ---- rate-experiment support --------------------------------------------- */

/* OLS of ln(mu_hat) on ln(n_eff); points with mu_hat <= 2 se are excluded.
 * n_used reports how many points entered the fit. */
mdclt_status mdclt_fit_loglog(const double* n_eff, const double* mu_hat, const double* se,
                              int64_t n_points, double* slope, double* intercept, double* r2,
                              int32_t* n_used);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MDCLT_H */
