#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace mdclt {

// Standard normal CDF via the complementary error function (<= 1e-15
// absolute error; part of the oracle contract).
double normal_cdf(double x);

// Factor T with T T^T = cov (symmetric eigendecomposition, negative
// eigenvalues clipped at zero). Validates symmetry and near-PSD-ness.
Eigen::MatrixXd gaussian_transform(const Eigen::MatrixXd& cov);

// R draws of N(0, cov), replicate-major into out (R x p). Replicate r uses
// the derived stream (seed, r): the same contract as procgen sampling.
void sample_sum_gaussian(const Eigen::MatrixXd& cov, std::int64_t R, std::uint64_t seed,
                         double* out);

// C * delta * sqrt(log(e p) / min_marginal_var). The absolute constant is an
// input because it is not pinned by theory; callers record the C they used.
double nazarov_bound(double delta, double min_marginal_var, int p, double c);

// Gaussian-smoothed rectangle CDF E[1{x + eps Z <= r}] = prod_k Phi((r_k -
// x_k)/eps); monotone nondecreasing in every r_k.
double phi_smoothed(const Eigen::VectorXd& x, const Eigen::VectorXd& r, double eps);

}  // namespace mdclt
