// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vgb/bernstein.hpp"
#include "vgb/errors.hpp"
#include "vgb/gauss_jacobi.hpp"
#include "vgb/matrix.hpp"

namespace vgb {

/// Exponents of the weight (s-t)^alpha t^beta. Valid when alpha > -1,
/// beta > -1 and alpha + beta + 1 >= 0.
struct VolterraWeights {
    double alpha;
    double beta;

    VolterraWeights(double a, double b) : alpha(a), beta(b) {
        if (!(a > -1.0) || !(b > -1.0) || !(a + b + 1.0 >= 0.0))
            throw InvalidExponent("Volterra weights require alpha > -1, beta > -1 and "
                                  "alpha + beta + 1 >= 0, got alpha = " +
                                  std::to_string(a) + ", beta = " + std::to_string(b));
    }

    [[nodiscard]] double exponent_sum() const { return alpha + beta + 1.0; }
};

/// Coefficients Q^(l)_j(s_i) = int_0^{s_i} p^(l)_{m,j}(t) (s_i-t)^alpha t^beta dt
/// for a batch of evaluation points, values(i, j) = Q^(l)_j(s_i).
struct QCoefficientTable {
    std::vector<double> points;
    Matrix<double> values;
    std::size_t degree = 0;
    unsigned iterations = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Quadrature rule of the size prescribed for the GB degree,
/// n = floor((m+2)/2), so the Q-coefficient integrals are exact.
[[nodiscard]] JacobiRule q_rule(const GBOperator& op, const VolterraWeights& w);

/// Q^(l)_j(s) for j = 0..m, computed as
///   s^{alpha+beta+1} sum_r (C_{m,l})_{r,j} sum_k lambda_k p_{m,r}(x_k s).
/// The inner sums over the rule nodes are formed first (n basis evaluations),
/// then C^T is applied once: O(n m + m^2) per point.
[[nodiscard]] std::vector<double> q_coefficients(const GBOperator& op, const VolterraWeights& w,
                                                 double s, const JacobiRule& rule);
[[nodiscard]] std::vector<double> q_coefficients(const GBOperator& op, const VolterraWeights& w,
                                                 double s);

/// Batch of q_coefficients over several evaluation points, sharing one rule.
[[nodiscard]] QCoefficientTable q_coefficient_table(const GBOperator& op,
                                                    const VolterraWeights& w,
                                                    std::span<const double> points);

/// Discretized Volterra operator (V^(l)_m f)(s) = sum_j Q^(l)_j(s) k(t_j, s) f(t_j)
/// from the samples f(t_j).
template <typename T, typename Kernel>
[[nodiscard]] T apply_discrete_operator(const GBOperator& op, const VolterraWeights& w,
                                        Kernel&& kernel, std::span<const T> samples, double s) {
    if (samples.size() != op.degree() + 1)
        throw DimensionMismatch("apply_discrete_operator: expected " +
                                std::to_string(op.degree() + 1) + " samples, got " +
                                std::to_string(samples.size()));
    const std::vector<double> q = q_coefficients(op, w, s);
    T acc{};
    for (std::size_t j = 0; j < q.size(); ++j) {
        const T k = kernel(op.node(j), s);
        if (!is_finite(k))
            throw NonFiniteEvaluation("kernel not finite at (t, s) = (" +
                                      std::to_string(op.node(j)) + ", " + std::to_string(s) + ")");
        acc += q[j] * k * samples[j];
    }
    return acc;
}

}  // namespace vgb
