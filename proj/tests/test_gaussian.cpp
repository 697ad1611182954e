#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gaussian.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "procgen.hpp"

using namespace mdclt;

TEST_CASE("sample_sum_gaussian: marginal variances") {
    const std::int64_t R = 20000;
    SUBCASE("identity covariance") {
        const int p = 3;
        std::vector<double> draws(static_cast<std::size_t>(R) * p);
        sample_sum_gaussian(Eigen::MatrixXd::Identity(p, p), R, 77, draws.data());
        for (int k = 0; k < p; ++k) {
            std::vector<double> sq(static_cast<std::size_t>(R));
            for (std::int64_t r = 0; r < R; ++r) {
                const double v = draws[r * p + k];
                sq[static_cast<std::size_t>(r)] = v * v;
            }
            const auto est = oracle::mean_se(sq);
            CHECK(std::abs(est.mean - 1.0) <= 5.0 * est.se);
        }
    }
    SUBCASE("MA(1) theta = 0.5 n = 4 sum variance 8") {
        Eigen::MatrixXd cov(1, 1);
        cov << 8.0;
        std::vector<double> draws(static_cast<std::size_t>(R));
        sample_sum_gaussian(cov, R, 78, draws.data());
        std::vector<double> sq(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) sq[i] = draws[i] * draws[i];
        const auto est = oracle::mean_se(sq);
        CHECK(std::abs(est.mean - 8.0) <= 5.0 * est.se);
    }
    SUBCASE("zero covariance gives exact zeros") {
        std::vector<double> draws(10 * 2, 1.0);
        sample_sum_gaussian(Eigen::MatrixXd::Zero(2, 2), 10, 79, draws.data());
        for (double v : draws) CHECK(v == 0.0);
    }
}

TEST_CASE("sample_sum_gaussian: validation") {
    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 0.5, -0.5, 1.0;
    std::vector<double> buf(4);
    CHECK_THROWS_AS(sample_sum_gaussian(asym, 2, 1, buf.data()), NumericError);

    Eigen::MatrixXd indef(2, 2);
    indef << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
    CHECK_THROWS_AS(sample_sum_gaussian(indef, 2, 1, buf.data()), NumericError);

    // near-semidefinite with tiny negative eigenvalue is clipped, not rejected
    Eigen::MatrixXd nearpsd(2, 2);
    nearpsd << 1.0, 1.0, 1.0, 1.0 - 1e-13;
    sample_sum_gaussian(nearpsd, 2, 1, buf.data());
}

TEST_CASE("sample_sum_gaussian: deterministic under seed") {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2, 2);
    std::vector<double> a(8), b(8);
    sample_sum_gaussian(cov, 4, 123, a.data());
    sample_sum_gaussian(cov, 4, 123, b.data());
    CHECK(a == b);
}

TEST_CASE("nazarov_bound: values and scaling") {
    CHECK(nazarov_bound(0.0, 1.0, 5, 1.0) == 0.0);
    CHECK(nazarov_bound(1.0, 1.0, 1, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // quadrupling the variance halves the bound
    const double base = nazarov_bound(0.2, 1.0, 7, 1.5);
    CHECK(nazarov_bound(0.2, 4.0, 7, 1.5) == doctest::Approx(base / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(nazarov_bound(0.1, 0.0, 3, 1.0), NumericError);
    CHECK_THROWS_AS(nazarov_bound(-0.1, 1.0, 3, 1.0), ConfigError);
}

TEST_CASE("phi_smoothed: closed-form corners") {
    Eigen::Vector3d x(0.3, -1.0, 2.0);
    CHECK(phi_smoothed(x, x, 0.7) == doctest::Approx(0.125).epsilon(1e-14));

    Eigen::Vector3d r = x.array() + 10.0 * 0.7;
    CHECK(phi_smoothed(x, r, 0.7) == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(phi_smoothed(x, x, 0.0), ConfigError);
    CHECK_THROWS_AS(phi_smoothed(x, Eigen::Vector2d(0, 0), 1.0), ConfigError);
}

TEST_CASE("phi_smoothed: Monte Carlo oracle at p = 3") {
    Eigen::Vector3d x(0.2, -0.4, 1.1);
    Eigen::Vector3d r(0.5, -0.3, 0.9);
    const double eps = 0.8;
    const double expected = phi_smoothed(x, r, eps);

    std::mt19937_64 gen(2718);
    std::normal_distribution<double> normal;
    const int n = 1000000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        bool in = true;
        for (int k = 0; k < 3 && in; ++k) in = x[k] + eps * normal(gen) <= r[k];
        hits += in;
    }
    const double freq = static_cast<double>(hits) / n;
    const double se = std::sqrt(expected * (1.0 - expected) / n);
    CHECK(std::abs(freq - expected) <= 4.0 * se);
}

TEST_CASE("phi_smoothed: per-coordinate Lipschitz constant phi_max/eps") {
    const double eps = 0.5;
    const double lipschitz = 1.0 / std::sqrt(2.0 * M_PI) / eps;
    std::mt19937_64 gen(31);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 300; ++trial) {
        Eigen::Vector3d x(normal(gen), normal(gen), normal(gen));
        Eigen::Vector3d r(normal(gen), normal(gen), normal(gen));
        const double h = 1e-6;
        for (int k = 0; k < 3; ++k) {
            Eigen::Vector3d hi = x, lo = x;
            hi[k] += h;
            lo[k] -= h;
            const double slope =
                std::abs(phi_smoothed(hi, r, eps) - phi_smoothed(lo, r, eps)) / (2.0 * h);
            CHECK(slope <= lipschitz * (1.0 + 1e-6));
        }
    }
}
