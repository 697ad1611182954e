#include <doctest.h>

#include <cmath>
#include <random>

#include "core.hpp"
#include "gaussian.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "procgen.hpp"

using namespace mdclt;

TEST_CASE("band membership: coordinate tests") {
    Rectangle rect{Eigen::Vector2d(0.0, 0.0), 0.5};

    // x = r sits inside the outer rectangle and breaches the inner one.
    CHECK(band_membership(Eigen::Vector2d(0.0, 0.0), rect));
    // x = r - 1 is inside the inner rectangle.
    CHECK_FALSE(band_membership(Eigen::Vector2d(-1.0, -1.0), rect));
    // x1 in (-0.5, 0.5] breaches the inner rectangle, both coords below outer.
    CHECK(band_membership(Eigen::Vector2d(0.4, -3.0), rect));
    CHECK_FALSE(band_membership(Eigen::Vector2d(0.6, -3.0), rect));

    CHECK_THROWS_AS(band_membership(Eigen::Vector3d::Zero(), rect), ConfigError);
    Rectangle bad{Eigen::Vector2d(0.0, 0.0), -0.1};
    CHECK_THROWS_AS(band_membership(Eigen::Vector2d(0.0, 0.0), bad), ConfigError);
}

TEST_CASE("band membership: delta = 0 never fires for continuous samples") {
    Rectangle rect{Eigen::Vector3d(0.1, -0.2, 0.4), 0.0};
    std::mt19937_64 gen(7);
    std::normal_distribution<double> normal;
    int hits = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        Eigen::Vector3d x(normal(gen), normal(gen), normal(gen));
        if (band_membership(x, rect)) ++hits;
    }
    CHECK(static_cast<double>(hits) / n <= 1e-4);
}

TEST_CASE("band membership: implication properties") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int p = 1 + static_cast<int>(gen() % 4);
        Eigen::VectorXd x(p), r(p);
        for (int k = 0; k < p; ++k) {
            x[k] = normal(gen);
            r[k] = normal(gen);
        }
        Rectangle rect{r, unif(gen)};
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(p);
        if (band_membership(x, rect)) CHECK(rect_contains(x, r + rect.delta * ones));
        if (rect_contains(x, r - rect.delta * ones)) CHECK_FALSE(band_membership(x, rect));
    }
}

TEST_CASE("prefix_sum: single term and zero batch") {
    auto spec = testutil::iid_spec(2);
    auto batch = sample_paths(spec, 1, 3, 42);
    for (std::int64_t r = 0; r < 3; ++r)
        CHECK((batch->prefix_sum_one(r, 1, 1) - batch->value(r, 1)).cwiseAbs().maxCoeff() == 0.0);

    SampleBatch zeros(2, 5, 2, 0, nullptr);
    for (std::int64_t r = 0; r < 2; ++r) {
        std::fill(zeros.mutable_path(r), zeros.mutable_path(r) + 10, 0.0);
        zeros.finalize_replicate(r);
    }
    CHECK(zeros.prefix_sum_one(1, 2, 5).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("prefix_sum: matches the naive summation oracle") {
    auto spec = testutil::ma1_spec(3, 0.5);
    const std::int64_t n = 257;
    auto batch = sample_paths(spec, n, 8, 1234);
    for (std::int64_t r = 0; r < batch->replicates(); ++r) {
        const Eigen::VectorXd fast = batch->prefix_sum_one(r, 1, n);
        const Eigen::VectorXd slow = oracle::naive_interval_sum(*batch, r, 1, n);
        for (int k = 0; k < 3; ++k)
            CHECK(fast[k] == doctest::Approx(slow[k]).epsilon(1e-10));
    }
    // interior interval
    const Eigen::VectorXd fast = batch->prefix_sum_one(0, 17, 98);
    const Eigen::VectorXd slow = oracle::naive_interval_sum(*batch, 0, 17, 98);
    for (int k = 0; k < 3; ++k) CHECK(fast[k] == doctest::Approx(slow[k]).epsilon(1e-10));
}

TEST_CASE("prefix_sum: index errors") {
    auto batch = sample_paths(testutil::iid_spec(1), 10, 2, 9);
    CHECK_THROWS_AS(batch->prefix_sum_one(0, 0, 5), ConfigError);
    CHECK_THROWS_AS(batch->prefix_sum_one(0, 3, 11), ConfigError);
    CHECK_THROWS_AS(batch->prefix_sum_one(0, 7, 5), ConfigError);
}

TEST_CASE("prefix_sum additivity: exact for integer-valued data") {
    // Rademacher innovations with integer coefficients keep every value and
    // every block sum an exact double, so additivity holds bit-for-bit.
    auto spec = make_ma_process(2, 1,
                                {Eigen::MatrixXd::Identity(2, 2), 2.0 * Eigen::MatrixXd::Identity(2, 2)},
                                {InnovationLaw::rademacher, 1.0});
    const std::int64_t n = 300;
    auto batch = sample_paths(spec, n, 4, 77);
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 500; ++trial) {
        const std::int64_t i = 1 + static_cast<std::int64_t>(gen() % n);
        const std::int64_t k = i + static_cast<std::int64_t>(gen() % (n - i + 1));
        const std::int64_t j = i + static_cast<std::int64_t>(gen() % (k - i + 1));
        const std::int64_t r = static_cast<std::int64_t>(gen() % 4);
        Eigen::VectorXd whole = batch->prefix_sum_one(r, i, k);
        Eigen::VectorXd left = batch->prefix_sum_one(r, i, j);
        Eigen::VectorXd right = j + 1 <= k ? batch->prefix_sum_one(r, j + 1, k)
                                           : Eigen::VectorXd::Zero(2).eval();
        CHECK((left + right - whole).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("prefix_sum additivity: tight for continuous data") {
    auto spec = testutil::iid_spec(1);
    const std::int64_t n = 1024;
    auto batch = sample_paths(spec, n, 2, 3);
    std::mt19937_64 gen(6);
    for (int trial = 0; trial < 500; ++trial) {
        const std::int64_t i = 1 + static_cast<std::int64_t>(gen() % n);
        const std::int64_t k = i + static_cast<std::int64_t>(gen() % (n - i + 1));
        const std::int64_t j = i + static_cast<std::int64_t>(gen() % (k - i + 1));
        const double whole = batch->prefix_sum_one(0, i, k)[0];
        const double left = batch->prefix_sum_one(0, i, j)[0];
        const double right = j + 1 <= k ? batch->prefix_sum_one(0, j + 1, k)[0] : 0.0;
        CHECK(std::abs(left + right - whole) <= 1e-12 * (1.0 + std::abs(whole)));
    }
}
