// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vgb/errors.hpp"
#include "vgb/matrix.hpp"

namespace vgb {

/// Evaluator for the degree-m Bernstein basis p_{m,k}(x) = C(m,k) x^k (1-x)^{m-k}
/// on [0,1]. Work happens in the log domain so degrees up to 1024 evaluate
/// without overflow; entries below the double underflow threshold flush to 0.
/// The log-binomial prefix is cached, so repeated evaluations are O(m) each.
class BernsteinBasis {
public:
    explicit BernsteinBasis(std::size_t degree);

    [[nodiscard]] std::size_t degree() const { return degree_; }

    /// Equispaced node t_k = k/m.
    [[nodiscard]] double node(std::size_t k) const {
        return static_cast<double>(k) / static_cast<double>(degree_);
    }

    /// Writes the m+1 basis values at x into out.
    void evaluate(double x, std::span<double> out) const;

    [[nodiscard]] std::vector<double> evaluate(double x) const {
        std::vector<double> out(degree_ + 1);
        evaluate(x, out);
        return out;
    }

private:
    std::size_t degree_;
    std::vector<double> log_binomial_;  // log C(m,k), k = 0..m
};

/// Basis values p_{m,k}(x), k = 0..m.
[[nodiscard]] std::vector<double> bernstein_basis_at(std::size_t degree, double x);

/// Collocation matrix A with (A)_{i,j} = p_{m,j}(t_i) at t_i = i/m.
[[nodiscard]] Matrix<double> collocation_matrix(std::size_t degree);

/// Basis-change matrix C_{m,l} = I + (I-A) + ... + (I-A)^{l-1}, built by
/// binary decomposition of the geometric sum (the power-of-two case reduces
/// to the doubling recurrence C_{m,2p} = C_{m,p} + (I-A)^p C_{m,p}).
/// Never formed through A^{-1}: A is severely ill-conditioned for large m.
[[nodiscard]] Matrix<double> gb_matrix(const Matrix<double>& collocation, unsigned iterations);
[[nodiscard]] Matrix<double> gb_matrix(std::size_t degree, unsigned iterations);

/// Generalized Bernstein operator B_{m,l} = I - (I - B_m)^l in its nodal
/// representation: caches the collocation matrix A and the basis-change
/// matrix C_{m,l}, after which each basis evaluation is one vector-matrix
/// product. Immutable after construction; safe for concurrent reads.
class GBOperator {
public:
    GBOperator(std::size_t degree, unsigned iterations);

    [[nodiscard]] std::size_t degree() const { return basis_.degree(); }
    [[nodiscard]] unsigned iterations() const { return iterations_; }
    [[nodiscard]] const BernsteinBasis& basis() const { return basis_; }
    [[nodiscard]] const Matrix<double>& collocation() const { return collocation_; }
    [[nodiscard]] const Matrix<double>& basis_change() const { return basis_change_; }
    [[nodiscard]] double node(std::size_t k) const { return basis_.node(k); }

    /// Fundamental GB polynomial values p^(l)_{m,j}(x) = (p_m(x)^T C_{m,l})_j.
    [[nodiscard]] std::vector<double> basis_at(double x) const;

    /// B_{m,l}(f, x) from the samples f(t_j), j = 0..m.
    template <typename T>
    [[nodiscard]] T approximate(std::span<const T> samples, double x) const {
        if (samples.size() != degree() + 1)
            throw DimensionMismatch("approximate: expected " + std::to_string(degree() + 1) +
                                    " samples, got " + std::to_string(samples.size()));
        const std::vector<double> phi = basis_at(x);
        T acc{};
        for (std::size_t j = 0; j < phi.size(); ++j) acc += phi[j] * samples[j];
        return acc;
    }

private:
    BernsteinBasis basis_;
    unsigned iterations_;
    Matrix<double> collocation_;
    Matrix<double> basis_change_;
};

}  // namespace vgb
