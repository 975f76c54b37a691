// SPDX-License-Identifier: Apache-2.0
#include "vgb/volterra.hpp"

#include <cmath>

namespace vgb {

JacobiRule q_rule(const GBOperator& op, const VolterraWeights& w) {
    return JacobiRule(w.alpha, w.beta, rule_size_for_degree(op.degree()));
}

namespace {

// Inner sums v_r = sum_k lambda_k p_{m,r}(x_k s); q = s^{alpha+beta+1} C^T v.
void q_coefficients_into(const GBOperator& op, const VolterraWeights& w, double s,
                         const JacobiRule& rule, std::span<double> out,
                         std::span<double> scratch) {
    if (!(s >= 0.0 && s <= 1.0))
        throw DomainViolation("q_coefficients requires s in [0,1], got " + std::to_string(s));

    const std::size_t size = op.degree() + 1;
    const double prefactor = std::pow(s, w.exponent_sum());
    if (prefactor == 0.0) {
        for (double& v : out) v = 0.0;
        return;
    }

    std::vector<double> inner(size, 0.0);
    for (std::size_t k = 0; k < rule.size(); ++k) {
        op.basis().evaluate(rule.nodes()[k] * s, scratch);
        const double lambda = rule.weights()[k];
        for (std::size_t r = 0; r < size; ++r) inner[r] += lambda * scratch[r];
    }
    const std::vector<double> q = op.basis_change().apply_transpose(inner);
    for (std::size_t j = 0; j < size; ++j) out[j] = prefactor * q[j];
}

}  // namespace

std::vector<double> q_coefficients(const GBOperator& op, const VolterraWeights& w, double s,
                                   const JacobiRule& rule) {
    std::vector<double> out(op.degree() + 1);
    std::vector<double> scratch(op.degree() + 1);
    q_coefficients_into(op, w, s, rule, out, scratch);
    return out;
}

std::vector<double> q_coefficients(const GBOperator& op, const VolterraWeights& w, double s) {
    return q_coefficients(op, w, s, q_rule(op, w));
}

QCoefficientTable q_coefficient_table(const GBOperator& op, const VolterraWeights& w,
                                      std::span<const double> points) {
    const JacobiRule rule = q_rule(op, w);
    QCoefficientTable table;
    table.points.assign(points.begin(), points.end());
    table.values = Matrix<double>(points.size(), op.degree() + 1);
    table.degree = op.degree();
    table.iterations = op.iterations();
    table.alpha = w.alpha;
    table.beta = w.beta;

    std::vector<double> scratch(op.degree() + 1);
    for (std::size_t i = 0; i < points.size(); ++i)
        q_coefficients_into(op, w, points[i], rule, table.values.row(i), scratch);
    return table;
}

}  // namespace vgb
