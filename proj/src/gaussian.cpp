#include "gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace mdclt {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

Eigen::MatrixXd gaussian_transform(const Eigen::MatrixXd& cov) {
    if (cov.rows() != cov.cols()) throw ConfigError("gaussian_transform: matrix must be square");
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw NumericError("gaussian_transform: covariance is not symmetric within 1e-10");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (cov + cov.transpose()));
    if (eig.info() != Eigen::Success)
        throw NumericError("gaussian_transform: eigendecomposition failed");
    const double trace = cov.trace();
    Eigen::VectorXd lambda = eig.eigenvalues();
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda[k] < -1e-10 * std::max(1.0, trace))
            throw NumericError("gaussian_transform: covariance is indefinite (lambda_min = " +
                               std::to_string(lambda[k]) + ")");
        lambda[k] = std::max(lambda[k], 0.0);
    }
    return eig.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
}

void sample_sum_gaussian(const Eigen::MatrixXd& cov, std::int64_t R, std::uint64_t seed,
                         double* out) {
    if (R < 1) throw ConfigError("sample_sum_gaussian: need R >= 1");
    const Eigen::MatrixXd transform = gaussian_transform(cov);
    const int p = static_cast<int>(cov.rows());
    parallel_chunks(R, [&](std::int64_t begin, std::int64_t end) {
        Eigen::VectorXd z(p);
        for (std::int64_t r = begin; r < end; ++r) {
            RngStream rng(seed, static_cast<std::uint64_t>(r));
            for (int k = 0; k < p; ++k) z[k] = rng.next_gaussian();
            Eigen::Map<Eigen::VectorXd>(out + r * p, p).noalias() = transform * z;
        }
    });
}

double nazarov_bound(double delta, double min_marginal_var, int p, double c) {
    if (delta < 0.0) throw ConfigError("nazarov_bound: delta must be >= 0");
    if (p < 1) throw ConfigError("nazarov_bound: p must be >= 1");
    if (c <= 0.0) throw ConfigError("nazarov_bound: C must be > 0");
    if (!(min_marginal_var > 0.0))
        throw NumericError("nazarov_bound: degenerate variance, min_i Sigma_ii must be > 0");
    return c * delta * std::sqrt((1.0 + std::log(static_cast<double>(p))) / min_marginal_var);
}

double phi_smoothed(const Eigen::VectorXd& x, const Eigen::VectorXd& r, double eps) {
    if (!(eps > 0.0)) throw ConfigError("phi_smoothed: eps must be > 0");
    if (x.size() != r.size()) throw ConfigError("phi_smoothed: dimension mismatch");
    double prod = 1.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) prod *= normal_cdf((r[k] - x[k]) / eps);
    return prod;
}

}  // namespace mdclt
