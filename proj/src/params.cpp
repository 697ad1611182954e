#include "params.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <nlohmann/json.hpp>
#include <vector>

#include "gaussian.hpp"
#include "parallel.hpp"
#include "procgen.hpp"
#include "rng.hpp"
#include "summation.hpp"

namespace mdclt {

namespace {

struct IntervalRatios {
    double min_diag;
    double lambda_min;
    double lambda_max;
};

IntervalRatios interval_ratios(const Eigen::MatrixXd& cov, std::int64_t len, int m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw NumericError("extract_sigmas: eigendecomposition failed at length " +
                           std::to_string(len));
    const double lmin = eig.eigenvalues().minCoeff();
    if (!(lmin > 0.0))
        throw NumericError("extract_sigmas: degenerate interval covariance at length " +
                           std::to_string(len) + " (lambda_min = " + std::to_string(lmin) + ")");
    const double divisor =
        static_cast<double>(len) * static_cast<double>(std::min<std::int64_t>(m, len));
    return {cov.diagonal().minCoeff() / divisor, lmin / divisor,
            eig.eigenvalues().maxCoeff() / divisor};
}

SigmaConstants reduce_ratios(const std::vector<IntervalRatios>& ratios) {
    double min_diag = ratios.front().min_diag;
    double lmin = ratios.front().lambda_min;
    double lmax = ratios.front().lambda_max;
    for (const auto& r : ratios) {
        min_diag = std::min(min_diag, r.min_diag);
        lmin = std::min(lmin, r.lambda_min);
        lmax = std::max(lmax, r.lambda_max);
    }
    return {std::sqrt(min_diag), std::sqrt(lmin), std::sqrt(lmax)};
}

}  // namespace

SigmaConstants extract_sigmas(const ProcessSpec& spec, std::int64_t n, int m) {
    if (n < 1) throw ConfigError("extract_sigmas: n must be >= 1");
    if (m < 1)
        throw ConfigError("extract_sigmas: m must be >= 1 (the assumption divisor "
                          "len*min(m,len) vanishes for m = 0)");
    std::vector<IntervalRatios> ratios(static_cast<std::size_t>(n));
    parallel_for(n, [&](std::int64_t idx) {
        const std::int64_t len = idx + 1;
        ratios[idx] = interval_ratios(sum_covariance_len(spec, len), len, m);
    });
    return reduce_ratios(ratios);
}

SigmaConstants extract_sigmas_general(
    const std::function<Eigen::MatrixXd(std::int64_t, std::int64_t)>& interval_cov,
    std::int64_t n, int m) {
    if (n < 1) throw ConfigError("extract_sigmas_general: n must be >= 1");
    if (m < 1) throw ConfigError("extract_sigmas_general: m must be >= 1");
    std::vector<IntervalRatios> ratios;
    ratios.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t j = i; j <= n; ++j)
            ratios.push_back(interval_ratios(interval_cov(i, j), j - i + 1, m));
    return reduce_ratios(ratios);
}

namespace {

struct MomentAccumulator {
    double mean1, se1, mean3, se3;
};

// Mean and standard error of |v|_inf and |v|_inf^3 over n_mc draws.
// Per-draw values land in arrays first; the reduction is a fixed-shape
// pairwise sum, so results do not depend on the worker count.
template <typename DrawFn>
MomentAccumulator moments_of(std::int64_t n_mc, const DrawFn& draw) {
    std::vector<double> a1(static_cast<std::size_t>(n_mc));
    std::vector<double> a3(static_cast<std::size_t>(n_mc));
    parallel_chunks(n_mc, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            const double v = draw(i);
            if (!std::isfinite(v)) throw NumericError("estimate_nu: non-finite sample");
            a1[i] = v;
            a3[i] = v * v * v;
        }
    });
    const double n = static_cast<double>(n_mc);
    MomentAccumulator acc{};
    acc.mean1 = pairwise_sum(a1.data(), n_mc) / n;
    acc.mean3 = pairwise_sum(a3.data(), n_mc) / n;
    for (std::int64_t i = 0; i < n_mc; ++i) {
        const double d1 = a1[i] - acc.mean1;
        const double d3 = a3[i] - acc.mean3;
        a1[i] = d1 * d1;
        a3[i] = d3 * d3;
    }
    acc.se1 = std::sqrt(pairwise_sum(a1.data(), n_mc) / (n - 1.0) / n);
    acc.se3 = std::sqrt(pairwise_sum(a3.data(), n_mc) / (n - 1.0) / n);
    return acc;
}

NuEstimate combine_branches(const MomentAccumulator& x, const MomentAccumulator& y) {
    NuEstimate out;
    if (x.mean1 >= y.mean1) {
        out.nu1 = x.mean1;
        out.nu1_se = x.se1;
    } else {
        out.nu1 = y.mean1;
        out.nu1_se = y.se1;
    }
    if (x.mean3 >= y.mean3) {
        out.nu3 = x.mean3;
        out.nu3_se = x.se3;
    } else {
        out.nu3 = y.mean3;
        out.nu3_se = y.se3;
    }
    return out;
}

constexpr std::uint64_t kGaussianBranchTag = 0x9A55F0ULL;

}  // namespace

NuEstimate estimate_nu_interval(const ProcessSpec& spec, std::int64_t len, double scale,
                                std::int64_t n_mc, std::uint64_t seed) {
    if (n_mc < 1000) throw ConfigError("estimate_nu: need n_mc >= 1000");
    if (len < 1) throw ConfigError("estimate_nu: interval length must be >= 1");
    const int p = spec.p;
    const int m = spec.m;

    auto draw_x = [&](std::int64_t i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        thread_local std::vector<double> eps;
        eps.resize(static_cast<std::size_t>(len + m) * p);
        for (double& e : eps) {
            switch (spec.innovation.law) {
                case InnovationLaw::gaussian: e = rng.next_gaussian(); break;
                case InnovationLaw::rademacher: e = rng.next_rademacher(); break;
                case InnovationLaw::centered_exponential:
                    e = rng.next_centered_exponential();
                    break;
            }
        }
        Eigen::Map<const Eigen::MatrixXd> emat(eps.data(), p, len + m);
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(p);
        for (std::int64_t t = 1; t <= len; ++t) {
            for (int a = 0; a <= m; ++a) sum.noalias() += spec.coeffs[a] * emat.col(m + t - 1 - a);
        }
        return (scale * sum).cwiseAbs().maxCoeff();
    };

    const Eigen::MatrixXd cov = scale * scale * sum_covariance_len(spec, len);
    const Eigen::MatrixXd transform = gaussian_transform(cov);
    const std::uint64_t seed_y = derive_seed(seed, kGaussianBranchTag);
    auto draw_y = [&](std::int64_t i) {
        RngStream rng(seed_y, static_cast<std::uint64_t>(i));
        Eigen::VectorXd z(p);
        for (int k = 0; k < p; ++k) z[k] = rng.next_gaussian();
        return (transform * z).cwiseAbs().maxCoeff();
    };

    return combine_branches(moments_of(n_mc, draw_x), moments_of(n_mc, draw_y));
}

NuEstimate estimate_nu(const ProcessSpec& spec, std::int64_t n_mc, std::uint64_t seed) {
    return estimate_nu_interval(spec, 1, 1.0, n_mc, seed);
}

MomentParams extract_params(const ProcessSpec& spec, std::int64_t n, int m, std::int64_t n_mc,
                            std::uint64_t seed) {
    const SigmaConstants sig = extract_sigmas(spec, n, m);
    const NuEstimate nu = estimate_nu(spec, n_mc, seed);
    MomentParams mp;
    mp.sigma_min = sig.sigma_min;
    mp.sigma_lower = sig.sigma_lower;
    mp.sigma_upper = sig.sigma_upper;
    mp.nu1 = nu.nu1;
    mp.nu3 = nu.nu3;
    mp.nu1_se = nu.nu1_se;
    mp.nu3_se = nu.nu3_se;
    mp.n = n;
    mp.m = m;
    return mp;
}

std::string moment_params_to_json(const MomentParams& mp, std::int64_t nu_mc,
                                  std::uint64_t nu_seed) {
    nlohmann::ordered_json j;
    j["sigma_min"] = mp.sigma_min;
    j["sigma_lower"] = mp.sigma_lower;
    j["sigma_upper"] = mp.sigma_upper;
    j["nu1"] = mp.nu1;
    j["nu3"] = mp.nu3;
    j["nu1_se"] = mp.nu1_se;
    j["nu3_se"] = mp.nu3_se;
    j["n"] = mp.n;
    j["m"] = mp.m;
    j["nu_mc"] = nu_mc;
    j["nu_seed"] = nu_seed;
    j["constants_convention"] = "absolute constants default to C=1; logs are natural, log(e x) = 1 + ln x";
    return j.dump();
}

MomentParams moment_params_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("moment params JSON parse error: ") + e.what());
    }
    MomentParams mp;
    mp.sigma_min = j.at("sigma_min").get<double>();
    mp.sigma_lower = j.at("sigma_lower").get<double>();
    mp.sigma_upper = j.at("sigma_upper").get<double>();
    mp.nu1 = j.at("nu1").get<double>();
    mp.nu3 = j.at("nu3").get<double>();
    mp.nu1_se = j.value("nu1_se", 0.0);
    mp.nu3_se = j.value("nu3_se", 0.0);
    mp.n = j.value("n", std::int64_t{0});
    mp.m = j.value("m", 0);
    return mp;
}

}  // namespace mdclt
