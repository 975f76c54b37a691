// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "vgb/bernstein.hpp"
#include "vgb/errors.hpp"
#include "vgb/linalg.hpp"
#include "vgb/volterra.hpp"

namespace vgb {

/// Second-kind Volterra equation
///   f(s) + mu int_0^s k(t,s) f(t) (s-t)^alpha t^beta dt = g(s),  s in (0,1].
/// The scalar type T is double or complex<double>; kernel and rhs must be
/// finite wherever the discretization samples them. `exact`, when present,
/// is used for error reporting only.
template <typename T>
struct VolterraProblem {
    std::function<T(double, double)> kernel;  // k(t, s)
    std::function<T(double)> rhs;             // g(s)
    T mu{};
    VolterraWeights weights{0.0, 0.0};
    std::function<T(double)> exact;  // optional
};

/// Collocation system entries delta_ij + mu Q^(l)_j(s_i) k(t_j, s_i) at the
/// points s_i = i/m, together with the right-hand side g(s_i).
template <typename T>
[[nodiscard]] std::pair<Matrix<T>, std::vector<T>> assemble_system(
    const VolterraProblem<T>& problem, const GBOperator& op, const QCoefficientTable& q) {
    const std::size_t size = op.degree() + 1;
    Matrix<T> system = Matrix<T>::identity(size);
    std::vector<T> rhs(size);
    for (std::size_t i = 0; i < size; ++i) {
        const double s = q.points[i];
        for (std::size_t j = 0; j < size; ++j) {
            const T k = problem.kernel(op.node(j), s);
            if (!is_finite(k))
                throw NonFiniteEvaluation("kernel not finite at (t, s) = (" +
                                          std::to_string(op.node(j)) + ", " + std::to_string(s) +
                                          ")");
            system(i, j) += problem.mu * q.values(i, j) * k;
        }
        rhs[i] = problem.rhs(s);
        if (!is_finite(rhs[i]))
            throw NonFiniteEvaluation("rhs not finite at s = " + std::to_string(s));
    }
    return {std::move(system), std::move(rhs)};
}

template <typename T>
[[nodiscard]] std::pair<Matrix<T>, std::vector<T>> assemble_system(
    const VolterraProblem<T>& problem, std::size_t degree, unsigned iterations) {
    const GBOperator op(degree, iterations);
    std::vector<double> nodes(degree + 1);
    for (std::size_t i = 0; i <= degree; ++i) nodes[i] = op.node(i);
    const QCoefficientTable q = q_coefficient_table(op, problem.weights, nodes);
    return assemble_system(problem, op, q);
}

/// Solved nodal values a*_j = f^(l)_m(t_j) plus everything needed to
/// evaluate the Nystrom interpolant anywhere in [0,1]. Immutable.
template <typename T>
class NystromSolution {
public:
    NystromSolution(std::shared_ptr<const GBOperator> op, VolterraWeights weights,
                    QCoefficientTable node_q, std::vector<T> nodal_values, double condition)
        : op_(std::move(op)),
          weights_(weights),
          node_q_(std::move(node_q)),
          nodal_values_(std::move(nodal_values)),
          condition_(condition) {}

    [[nodiscard]] std::size_t degree() const { return op_->degree(); }
    [[nodiscard]] unsigned iterations() const { return op_->iterations(); }
    [[nodiscard]] const GBOperator& op() const { return *op_; }
    [[nodiscard]] const VolterraWeights& weights() const { return weights_; }
    [[nodiscard]] std::span<const T> nodal_values() const { return nodal_values_; }
    [[nodiscard]] double condition_number() const { return condition_; }

    /// Q^(l)_j(s) row for the interpolant: reuses the collocation table when
    /// s is a node, otherwise computes a fresh single-point row.
    [[nodiscard]] std::vector<double> q_row(double s) const {
        const double scaled = s * static_cast<double>(degree());
        const double rounded = std::round(scaled);
        if (rounded == scaled && rounded >= 0.0 && rounded <= static_cast<double>(degree())) {
            const auto i = static_cast<std::size_t>(rounded);
            const auto row = node_q_.values.row(i);
            return {row.begin(), row.end()};
        }
        return q_coefficients(*op_, weights_, s);
    }

private:
    std::shared_ptr<const GBOperator> op_;
    VolterraWeights weights_;
    QCoefficientTable node_q_;
    std::vector<T> nodal_values_;
    double condition_;
};

/// Assemble and solve the collocation system. The infinity-norm condition
/// number of the system matrix is recorded on the solution.
template <typename T>
[[nodiscard]] NystromSolution<T> solve(const VolterraProblem<T>& problem,
                                       std::shared_ptr<const GBOperator> op) {
    const std::size_t degree = op->degree();
    const unsigned iterations = op->iterations();
    std::vector<double> nodes(degree + 1);
    for (std::size_t i = 0; i <= degree; ++i) nodes[i] = op->node(i);
    QCoefficientTable q = q_coefficient_table(*op, problem.weights, nodes);

    auto [system, rhs] = assemble_system(problem, *op, q);
    try {
        const LUFactorization<T> lu = lu_factor(system);
        std::vector<T> a = lu_solve(lu, std::span<const T>(rhs));
        const double condition = norm_inf(system) * norm_inf(inverse(system));
        return NystromSolution<T>(std::move(op), problem.weights, std::move(q), std::move(a),
                                  condition);
    } catch (const SingularMatrix& e) {
        throw IllPosedDiscretization("collocation system singular at m = " +
                                     std::to_string(degree) + ", l = " +
                                     std::to_string(iterations) + ": " + e.what());
    }
}

template <typename T>
[[nodiscard]] NystromSolution<T> solve(const VolterraProblem<T>& problem, std::size_t degree,
                                       unsigned iterations) {
    return solve(problem, std::make_shared<const GBOperator>(degree, iterations));
}

/// Nystrom interpolant f^(l)_m(s) = g(s) - mu sum_j Q^(l)_j(s) k(t_j, s) a*_j.
/// At the nodes this reproduces the solved values a*_j.
template <typename T>
[[nodiscard]] T interpolant_at(const NystromSolution<T>& solution,
                               const VolterraProblem<T>& problem, double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw DomainViolation("interpolant_at requires s in [0,1], got " + std::to_string(s));
    const std::vector<double> q = solution.q_row(s);
    T acc{};
    for (std::size_t j = 0; j < q.size(); ++j)
        acc += q[j] * problem.kernel(solution.op().node(j), s) * solution.nodal_values()[j];
    return problem.rhs(s) - problem.mu * acc;
}

}  // namespace vgb
