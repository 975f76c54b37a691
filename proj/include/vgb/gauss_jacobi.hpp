// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vgb/errors.hpp"
#include "vgb/matrix.hpp"

namespace vgb {

/// n-point Gauss-Jacobi rule on [0,1] for the weight (1-z)^alpha z^beta.
///
/// Nodes are the zeros of the degree-n orthonormal Jacobi polynomial mapped
/// to [0,1]; weights are the Christoffel numbers carrying the full measure,
/// so sum(weights) = B(beta+1, alpha+1) and the rule integrates polynomials
/// of degree <= 2n-1 exactly against the weight.
class JacobiRule {
public:
    JacobiRule(double alpha, double beta, std::size_t n);

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const { return weights_; }

    /// sum_k lambda_k f(x_k). Throws NonFiniteEvaluation if f is not finite
    /// at a node.
    template <typename F>
    [[nodiscard]] auto integrate(F&& f) const {
        using R = decltype(f(0.0));
        R acc{};
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            const R fk = f(nodes_[k]);
            if (!is_finite(fk))
                throw NonFiniteEvaluation("integrand not finite at node z = " +
                                          std::to_string(nodes_[k]));
            acc += weights_[k] * fk;
        }
        return acc;
    }

private:
    double alpha_;
    double beta_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Convenience constructor mirroring the rule's free-function form.
[[nodiscard]] inline JacobiRule jacobi_rule(double alpha, double beta, std::size_t n) {
    return JacobiRule(alpha, beta, n);
}

/// Smallest rule size n = floor((m+2)/2) with 2n-1 >= m, so degree-m
/// integrands are captured exactly.
[[nodiscard]] constexpr std::size_t rule_size_for_degree(std::size_t m) { return (m + 2) / 2; }

}  // namespace vgb
