#pragma once

#include <vector>

#include "core.hpp"
#include "procgen.hpp"

namespace testutil {

inline mdclt::ProcessSpec iid_spec(int p, mdclt::InnovationLaw law = mdclt::InnovationLaw::gaussian) {
    return mdclt::make_ma_process(p, 0, {Eigen::MatrixXd::Identity(p, p)}, {law, 1.0});
}

inline mdclt::ProcessSpec ma1_spec(int p, double theta,
                                   mdclt::InnovationLaw law = mdclt::InnovationLaw::gaussian) {
    return mdclt::make_ma_process(
        p, 1, {Eigen::MatrixXd::Identity(p, p), theta * Eigen::MatrixXd::Identity(p, p)},
        {law, 1.0});
}

// MA(m) with geometrically decaying scaled-identity coefficients.
inline mdclt::ProcessSpec ma_decay_spec(int p, int m, double decay,
                                        mdclt::InnovationLaw law = mdclt::InnovationLaw::gaussian) {
    std::vector<Eigen::MatrixXd> coeffs;
    double scale = 1.0;
    for (int a = 0; a <= m; ++a) {
        coeffs.push_back(scale * Eigen::MatrixXd::Identity(p, p));
        scale *= decay;
    }
    return mdclt::make_ma_process(p, m, std::move(coeffs), {law, 1.0});
}

// p = 2 MA(m) with fixed non-diagonal coefficients; interval sums stay
// uniformly nondegenerate for the decays used in tests.
inline mdclt::ProcessSpec ma_cross_spec(int m, mdclt::InnovationLaw law) {
    Eigen::Matrix2d base;
    base << 0.8, 0.3, -0.1, 0.7;
    std::vector<Eigen::MatrixXd> coeffs;
    coeffs.push_back(Eigen::MatrixXd::Identity(2, 2));
    double scale = 0.5;
    for (int a = 1; a <= m; ++a) {
        coeffs.push_back(scale * base);
        scale *= 0.5;
    }
    return mdclt::make_ma_process(2, m, std::move(coeffs), {law, 1.0});
}

}  // namespace testutil
