// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>

namespace vgb {

/// Double-exponential (tanh-sinh) quadrature over (0,1).
///
/// The integrand is called as f(z, 1-z); both arguments are computed from
/// the exponential form directly, so endpoint factors like (1-z)^alpha keep
/// full relative accuracy near z = 1. Handles integrable algebraic endpoint
/// behavior, which is what the weighted Volterra references need.
template <typename F>
[[nodiscard]] double tanh_sinh_01(F&& f, double rel_tol = 1e-13, int max_level = 12) {
    constexpr double t_max = 6.5;
    const auto sample = [&](double t) -> double {
        const double w = M_PI * std::sinh(t);  // z = logistic(2w) on (0,1)
        const double em = std::exp(-std::abs(w));
        const double denom = 1.0 + em;
        const double near_side = em / denom;   // min(z, 1-z)
        const double far_side = 1.0 / denom;   // max(z, 1-z)
        const double z = (w >= 0.0) ? far_side : near_side;
        const double omz = (w >= 0.0) ? near_side : far_side;
        const double jac = M_PI * std::cosh(t) * z * omz;
        if (jac < 1e-300) return 0.0;  // fully decayed tail
        return jac * f(z, omz);
    };

    double h = 1.0;
    double sum = sample(0.0);
    for (int i = 1; i * h <= t_max; ++i) sum += sample(i * h) + sample(-i * h);
    double integral = h * sum;

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double midpoints = 0.0;
        for (double t = h; t <= t_max; t += 2.0 * h) midpoints += sample(t) + sample(-t);
        const double refined = 0.5 * integral + h * midpoints;
        const double change = std::abs(refined - integral);
        integral = refined;
        if (level >= 3 && change <= rel_tol * std::max(std::abs(integral), 1e-300)) break;
    }
    return integral;
}

}  // namespace vgb
