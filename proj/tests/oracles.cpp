#include "oracles.hpp"

#include <cmath>

namespace oracle {

Eigen::VectorXd naive_interval_sum(const mdclt::SampleBatch& batch, std::int64_t r,
                                   std::int64_t i, std::int64_t j) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(batch.dim());
    for (std::int64_t t = i; t <= j; ++t) sum += batch.value(r, t);
    return sum;
}

Eigen::MatrixXd brute_force_interval_cov(const mdclt::ProcessSpec& spec, std::int64_t i,
                                         std::int64_t j) {
    const int p = spec.p;
    // Gamma_l rebuilt here from the coefficients, independent of the cached
    // copy inside the spec.
    auto gamma = [&](std::int64_t l) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(p, p);
        const std::int64_t al = std::llabs(l);
        for (int a = 0; a + al <= spec.m; ++a)
            g += spec.coeffs[a] * spec.coeffs[a + al].transpose();
        return l >= 0 ? g : Eigen::MatrixXd(g.transpose());
    };
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
    for (std::int64_t a = i; a <= j; ++a)
        for (std::int64_t b = i; b <= j; ++b)
            if (std::llabs(b - a) <= spec.m) cov += gamma(b - a);
    return cov;
}

double maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                   double* argmax) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    if (argmax) *argmax = x;
    return f(x);
}

double fd_grad_l1(const std::function<double(const Eigen::VectorXd&)>& f,
                  const Eigen::VectorXd& x, double h) {
    double total = 0.0;
    Eigen::VectorXd lo = x, hi = x;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        hi[k] = x[k] + h;
        lo[k] = x[k] - h;
        total += std::abs(f(hi) - f(lo)) / (2.0 * h);
        hi[k] = x[k];
        lo[k] = x[k];
    }
    return total;
}

MeanSE mean_se(const std::vector<double>& values) {
    MeanSE out;
    const auto n = static_cast<double>(values.size());
    for (double v : values) out.mean += v;
    out.mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (n - 1.0) / n);
    return out;
}

}  // namespace oracle
