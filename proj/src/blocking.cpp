#include "blocking.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "parallel.hpp"
#include "procgen.hpp"
#include "rng.hpp"
#include "summation.hpp"

namespace mdclt {

namespace {

// Physical end index of block i (1-based blocks).
std::int64_t block_end(std::int64_t i, std::int64_t n_blocks, std::int64_t n, int m,
                       bool drop_remainder) {
    if (!drop_remainder && i == n_blocks) return n;
    return i * m;
}

}  // namespace

std::int64_t blocked_length(std::int64_t n, int m, bool drop_remainder) {
    if (m < 1) throw ConfigError("blocked_length: m must be >= 1");
    return drop_remainder ? n / m : (n - 1) / m;
}

std::shared_ptr<SampleBatch> block_reduce(const SampleBatch& batch, int m, bool drop_remainder) {
    const std::int64_t n = batch.length();
    const std::int64_t n_blocks = blocked_length(n, m, drop_remainder);
    if (n_blocks < 1)
        throw ConfigError("block_reduce: insufficient length, need n >= m+1 (n = " +
                          std::to_string(n) + ", m = " + std::to_string(m) + ")");
    auto out = std::make_shared<SampleBatch>(batch.replicates(), n_blocks, batch.dim(),
                                             batch.master_seed(), batch.spec(), m);
    const double inv_m = 1.0 / static_cast<double>(m);
    const int p = batch.dim();
    parallel_for(batch.replicates(), [&](std::int64_t r) {
        double* dst = out->mutable_path(r);
        std::int64_t start = 1;
        for (std::int64_t i = 1; i <= n_blocks; ++i) {
            const std::int64_t end = block_end(i, n_blocks, n, m, drop_remainder);
            const Eigen::VectorXd sum = batch.prefix_sum_one(r, start, end);
            for (int k = 0; k < p; ++k) dst[(i - 1) * p + k] = sum[k] * inv_m;
            start = end + 1;
        }
        out->finalize_replicate(r);
    });
    return out;
}

Eigen::MatrixXd blocked_lag_cov(const ProcessSpec& spec, int m, std::int64_t n, std::int64_t i,
                                std::int64_t lag) {
    const std::int64_t n_blocks = blocked_length(n, m);
    if (i < 1 || i + lag > n_blocks || lag < 0)
        throw ConfigError("blocked_lag_cov: block index out of range");
    const std::int64_t a_begin = (i - 1) * m + 1;
    const std::int64_t a_end = block_end(i, n_blocks, n, m, false);
    const std::int64_t b_begin = (i + lag - 1) * m + 1;
    const std::int64_t b_end = block_end(i + lag, n_blocks, n, m, false);
    const int p = spec.p;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
    for (std::int64_t a = a_begin; a <= a_end; ++a) {
        for (std::int64_t b = b_begin; b <= b_end; ++b) {
            const std::int64_t l = b - a;
            if (std::llabs(l) > spec.m) continue;
            if (l >= 0)
                cov += spec.lag_covs[l];
            else
                cov += spec.lag_covs[-l].transpose();
        }
    }
    return cov / (static_cast<double>(m) * static_cast<double>(m));
}

Eigen::MatrixXd blocked_sum_covariance(const ProcessSpec& spec, int m, std::int64_t n,
                                       std::int64_t i, std::int64_t j) {
    const std::int64_t n_blocks = blocked_length(n, m);
    if (i < 1 || j < i || j > n_blocks)
        throw ConfigError("blocked_sum_covariance: block interval out of range");
    const std::int64_t phys_len = block_end(j, n_blocks, n, m, false) - (i - 1) * m;
    return sum_covariance_len(spec, phys_len) / (static_cast<double>(m) * static_cast<double>(m));
}

SigmaConstants extract_sigmas_blocked(const ProcessSpec& spec, std::int64_t n, int m) {
    if (m < 1) throw ConfigError("extract_sigmas_blocked: m must be >= 1");
    const std::int64_t n_blocks = blocked_length(n, m);
    if (n_blocks < 1) throw ConfigError("extract_sigmas_blocked: need n >= m+1");

    // Interior intervals depend only on the block count; intervals ending at
    // the remainder block are scanned separately. Divisor is len' (m' = 1).
    struct Case {
        std::int64_t phys_len;
        std::int64_t len;
    };
    std::vector<Case> cases;
    for (std::int64_t len = 1; len < n_blocks; ++len) cases.push_back({len * m, len});
    for (std::int64_t len = 1; len <= n_blocks; ++len)
        cases.push_back({n - (n_blocks - len) * m, len});

    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    double min_diag = std::numeric_limits<double>::infinity();
    double lmin_all = std::numeric_limits<double>::infinity();
    double lmax_all = -std::numeric_limits<double>::infinity();
    for (const auto& c : cases) {
        const Eigen::MatrixXd cov = sum_covariance_len(spec, c.phys_len) / m2;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success)
            throw NumericError("extract_sigmas_blocked: eigendecomposition failed");
        const double lmin = eig.eigenvalues().minCoeff();
        if (!(lmin > 0.0))
            throw NumericError("extract_sigmas_blocked: degenerate covariance at block length " +
                               std::to_string(c.len));
        const double divisor = static_cast<double>(c.len);
        min_diag = std::min(min_diag, cov.diagonal().minCoeff() / divisor);
        lmin_all = std::min(lmin_all, lmin / divisor);
        lmax_all = std::max(lmax_all, eig.eigenvalues().maxCoeff() / divisor);
    }
    return {std::sqrt(min_diag), std::sqrt(lmin_all), std::sqrt(lmax_all)};
}

NuEstimate estimate_nu_blocked(const ProcessSpec& spec, std::int64_t n, int m, std::int64_t n_mc,
                               std::uint64_t seed) {
    const std::int64_t n_blocks = blocked_length(n, m);
    if (n_blocks < 1) throw ConfigError("estimate_nu_blocked: need n >= m+1");
    const double scale = 1.0 / static_cast<double>(m);
    const std::int64_t last_len = n - (n_blocks - 1) * m;
    NuEstimate best = estimate_nu_interval(spec, last_len, scale, n_mc, seed);
    if (n_blocks >= 2) {
        const NuEstimate reg =
            estimate_nu_interval(spec, m, scale, n_mc, derive_seed(seed, 0xB10CULL));
        if (reg.nu1 > best.nu1) {
            best.nu1 = reg.nu1;
            best.nu1_se = reg.nu1_se;
        }
        if (reg.nu3 > best.nu3) {
            best.nu3 = reg.nu3;
            best.nu3_se = reg.nu3_se;
        }
    }
    return best;
}

namespace {

// Max absolute entry of the empirical lag-l cross-covariances, with the
// right factor taken from replicate (r + shift) mod R. shift = 0 is the
// observed statistic.
double cross_cov_stat(const SampleBatch& batch, int lag_from, int lag_to, std::int64_t shift) {
    const std::int64_t R = batch.replicates();
    const std::int64_t n = batch.length();
    const int p = batch.dim();
    const int n_lags = lag_to - lag_from + 1;
    const std::size_t block = static_cast<std::size_t>(n_lags) * p * p;
    std::vector<double> partials(static_cast<std::size_t>(R) * block, 0.0);
    parallel_for(R, [&](std::int64_t r) {
        const double* left = batch.path(r);
        const double* right = batch.path((r + shift) % R);
        double* dst = partials.data() + static_cast<std::size_t>(r) * block;
        for (int l = lag_from; l <= lag_to; ++l) {
            double* acc = dst + static_cast<std::size_t>(l - lag_from) * p * p;
            for (std::int64_t i = 0; i + l < n; ++i) {
                const double* xi = left + i * p;
                const double* xj = right + (i + l) * p;
                for (int a = 0; a < p; ++a)
                    for (int b = 0; b < p; ++b) acc[a * p + b] += xi[a] * xj[b];
            }
        }
    });
    double stat = 0.0;
    for (int l = lag_from; l <= lag_to; ++l) {
        const double denom = static_cast<double>(R) * static_cast<double>(n - l);
        for (int ab = 0; ab < p * p; ++ab) {
            const std::int64_t off = static_cast<std::int64_t>(l - lag_from) * p * p + ab;
            const double total =
                pairwise_sum(partials.data() + off, R, static_cast<std::int64_t>(block));
            stat = std::max(stat, std::abs(total / denom));
        }
    }
    return stat;
}

}  // namespace

DependenceCheck verify_m_dependence(const SampleBatch& batch, int lag, int n_perm,
                                    std::uint64_t seed, int window) {
    if (lag < 0) throw ConfigError("verify_m_dependence: lag must be >= 0");
    if (window < 1) throw ConfigError("verify_m_dependence: window must be >= 1");
    if (n_perm < 20) throw ConfigError("verify_m_dependence: need at least 20 permutations");
    if (batch.replicates() < 8)
        throw ConfigError("verify_m_dependence: need at least 8 replicates");
    const int lag_from = lag + 1;
    const int lag_to = static_cast<int>(
        std::min<std::int64_t>(lag + window, batch.length() - 1));
    if (lag_to < lag_from)
        throw ConfigError("verify_m_dependence: no testable lags above " + std::to_string(lag));

    DependenceCheck out;
    out.lag_from = lag_from;
    out.lag_to = lag_to;
    out.statistic = cross_cov_stat(batch, lag_from, lag_to, 0);

    RngStream rng(seed, 0xC0FFEEULL);
    std::vector<double> null_stats(static_cast<std::size_t>(n_perm));
    for (int b = 0; b < n_perm; ++b) {
        const std::int64_t shift =
            1 + static_cast<std::int64_t>(rng.next_u64() % (batch.replicates() - 1));
        null_stats[b] = cross_cov_stat(batch, lag_from, lag_to, shift);
    }
    std::sort(null_stats.begin(), null_stats.end());
    const auto idx = static_cast<std::size_t>(std::ceil(0.95 * n_perm)) - 1;
    out.null_q95 = null_stats[idx];
    out.pass = out.statistic <= out.null_q95;
    return out;
}

}  // namespace mdclt
