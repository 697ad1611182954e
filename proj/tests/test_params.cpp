#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "params.hpp"
#include "procgen.hpp"

using namespace mdclt;

TEST_CASE("extract_sigmas: iid N(0, I_p) with m = 1 gives all ones") {
    auto spec = testutil::iid_spec(3);
    const auto sig = extract_sigmas(spec, 50, 1);
    CHECK(sig.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sig.sigma_lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sig.sigma_upper == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extract_sigmas: MA(1) theta = 0.5 ratio scan") {
    // ratio(len) = 2.25 - 1/len: minimum 1.25 at len = 1, sup 2.25.
    auto spec = testutil::ma1_spec(1, 0.5);
    const std::int64_t n = 4000;
    const auto sig = extract_sigmas(spec, n, 1);
    CHECK(sig.sigma_min * sig.sigma_min == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(sig.sigma_lower * sig.sigma_lower == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(sig.sigma_upper * sig.sigma_upper ==
          doctest::Approx(2.25 - 1.0 / static_cast<double>(n)).epsilon(1e-12));
}

TEST_CASE("extract_sigmas: m = 0 is a parameter error") {
    auto spec = testutil::iid_spec(2);
    CHECK_THROWS_AS(extract_sigmas(spec, 10, 0), ConfigError);
}

TEST_CASE("extract_sigmas: ordering sigma_lower <= sigma_min <= sigma_upper") {
    for (int m : {1, 2, 4}) {
        auto spec = testutil::ma_cross_spec(m, InnovationLaw::gaussian);
        const auto sig = extract_sigmas(spec, 200, std::max(m, 1));
        CHECK(sig.sigma_lower <= sig.sigma_min + 1e-12);
        CHECK(sig.sigma_min <= sig.sigma_upper + 1e-12);
    }
}

TEST_CASE("extract_sigmas: extracted constants certify the assumptions") {
    auto spec = testutil::ma_cross_spec(3, InnovationLaw::gaussian);
    const std::int64_t n = 300;
    const int m = 3;
    const auto sig = extract_sigmas(spec, n, m);
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t i = 1 + static_cast<std::int64_t>(gen() % n);
        const std::int64_t j = i + static_cast<std::int64_t>(gen() % (n - i + 1));
        const std::int64_t len = j - i + 1;
        const double divisor =
            static_cast<double>(len) * static_cast<double>(std::min<std::int64_t>(m, len));
        const Eigen::MatrixXd cov = sum_covariance(spec, i, j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
        const double lmin = eig.eigenvalues().minCoeff();
        const double lmax = eig.eigenvalues().maxCoeff();
        CHECK(sig.sigma_lower * sig.sigma_lower * divisor <= lmin * (1.0 + 1e-9));
        CHECK(lmax <= sig.sigma_upper * sig.sigma_upper * divisor * (1.0 + 1e-9));
        CHECK(sig.sigma_min * sig.sigma_min * divisor <=
              cov.diagonal().minCoeff() * (1.0 + 1e-9));
    }
}

TEST_CASE("extract_sigmas_general: agrees with the stationary scan") {
    auto spec = testutil::ma_cross_spec(2, InnovationLaw::gaussian);
    const std::int64_t n = 40;
    const auto fast = extract_sigmas(spec, n, 2);
    const auto general = extract_sigmas_general(
        [&](std::int64_t i, std::int64_t j) { return sum_covariance(spec, i, j); }, n, 2);
    CHECK(fast.sigma_min == doctest::Approx(general.sigma_min).epsilon(1e-14));
    CHECK(fast.sigma_lower == doctest::Approx(general.sigma_lower).epsilon(1e-14));
    CHECK(fast.sigma_upper == doctest::Approx(general.sigma_upper).epsilon(1e-14));
}

TEST_CASE("estimate_nu: p = 1 standard Gaussian half-normal moments") {
    auto spec = testutil::iid_spec(1);
    const auto nu = estimate_nu(spec, 400000, 101);
    const double nu1_expected = std::sqrt(2.0 / M_PI);          // 0.7978845608
    const double nu3_expected = 2.0 * std::sqrt(2.0 / M_PI);    // 1.5957691216
    CHECK(std::abs(nu.nu1 - nu1_expected) <= 5.0 * nu.nu1_se);
    CHECK(std::abs(nu.nu3 - nu3_expected) <= 5.0 * nu.nu3_se);
}

TEST_CASE("estimate_nu: Rademacher takes the max across the X and Y branches") {
    auto spec = testutil::iid_spec(1, InnovationLaw::rademacher);
    const auto nu = estimate_nu(spec, 400000, 102);
    // |X| = 1 exactly beats E|Z| = 0.798, so nu1 = 1 with zero spread;
    // E|Z|^3 = 1.596 beats |X|^3 = 1, so nu3 comes from the Gaussian branch.
    CHECK(nu.nu1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nu.nu1_se == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(nu.nu3 - 2.0 * std::sqrt(2.0 / M_PI)) <= 5.0 * nu.nu3_se);
}

TEST_CASE("estimate_nu: centered-exponential closed forms") {
    auto spec = testutil::iid_spec(1, InnovationLaw::centered_exponential);
    const auto nu = estimate_nu(spec, 400000, 103);
    // X branch: E|X| = 2/e; Gaussian branch 0.798 wins for nu1.
    // For nu3 the X branch wins: 12/e - 2 = 2.4146 > 1.596.
    CHECK(std::abs(nu.nu1 - std::sqrt(2.0 / M_PI)) <= 5.0 * nu.nu1_se);
    CHECK(std::abs(nu.nu3 - (12.0 / M_E - 2.0)) <= 5.0 * nu.nu3_se);
}

TEST_CASE("estimate_nu: Jensen inequality nu1 <= nu3^{1/3}") {
    for (auto law : {InnovationLaw::gaussian, InnovationLaw::rademacher,
                     InnovationLaw::centered_exponential}) {
        auto spec = testutil::ma_cross_spec(2, law);
        const auto nu = estimate_nu(spec, 50000, 104);
        const double combined_se = 3.0 * (nu.nu1_se + nu.nu3_se);
        CHECK(nu.nu1 <= std::cbrt(nu.nu3) + combined_se);
    }
}

TEST_CASE("moment params JSON round-trip") {
    MomentParams mp;
    mp.sigma_min = 1.1;
    mp.sigma_lower = 1.05;
    mp.sigma_upper = 2.5;
    mp.nu1 = 0.9;
    mp.nu3 = 2.0;
    mp.nu1_se = 0.001;
    mp.nu3_se = 0.003;
    mp.n = 512;
    mp.m = 2;
    const auto text = moment_params_to_json(mp, 100000, 42);
    const auto back = moment_params_from_json(text);
    CHECK(back.sigma_min == mp.sigma_min);
    CHECK(back.sigma_upper == mp.sigma_upper);
    CHECK(back.nu3 == mp.nu3);
    CHECK(back.n == mp.n);
    CHECK(back.m == mp.m);
}
