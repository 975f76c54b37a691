// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vgb/matrix.hpp"

namespace vgb {

/// LU decomposition with partial pivoting, packed in a single matrix
/// (unit lower triangle implicit). pivots[k] is the row swapped into
/// position k at elimination step k.
template <typename T>
struct LUFactorization {
    Matrix<T> factors;
    std::vector<std::size_t> pivots;

    [[nodiscard]] std::size_t order() const { return factors.rows(); }
};

/// Factor a square matrix. A pivot of magnitude below
/// 1e-14 * norm_inf(a) is treated as singular.
template <typename T>
[[nodiscard]] LUFactorization<T> lu_factor(Matrix<T> a) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("lu_factor requires a square matrix, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    const std::size_t n = a.rows();
    const double threshold = 1e-14 * norm_inf(a);

    std::vector<std::size_t> pivots(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mag = std::abs(a(i, k));
            if (mag > best) {
                best = mag;
                p = i;
            }
        }
        if (!(best > threshold))
            throw SingularMatrix("pivot " + std::to_string(best) + " below threshold " +
                                 std::to_string(threshold) + " at step " + std::to_string(k));
        pivots[k] = p;
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));

        const T inv_pivot = T{1} / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const T lik = a(i, k) * inv_pivot;
            a(i, k) = lik;
            if (lik == T{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    return {std::move(a), std::move(pivots)};
}

/// Solve A x = b from a factorization of A.
template <typename T>
[[nodiscard]] std::vector<T> lu_solve(const LUFactorization<T>& f, std::span<const T> b) {
    const std::size_t n = f.order();
    if (b.size() != n)
        throw DimensionMismatch("lu_solve: rhs length " + std::to_string(b.size()) +
                                " does not match order " + std::to_string(n));
    std::vector<T> x(b.begin(), b.end());
    // Row interchanges were applied to whole rows during factorization, so
    // permute the right-hand side up front, then substitute.
    for (std::size_t k = 0; k < n; ++k)
        if (f.pivots[k] != k) std::swap(x[k], x[f.pivots[k]]);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) x[i] -= f.factors(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
        T acc = x[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= f.factors(i, j) * x[j];
        x[i] = acc / f.factors(i, i);
    }
    return x;
}

template <typename T>
[[nodiscard]] std::vector<T> lu_solve(const LUFactorization<T>& f, const std::vector<T>& b) {
    return lu_solve(f, std::span<const T>(b));
}

/// Explicit inverse by solving against the identity columns.
template <typename T>
[[nodiscard]] Matrix<T> inverse(const Matrix<T>& a) {
    const auto f = lu_factor(a);
    const std::size_t n = f.order();
    Matrix<T> inv(n, n);
    std::vector<T> e(n, T{});
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = T{1};
        const std::vector<T> col = lu_solve(f, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = T{};
    }
    return inv;
}

/// Infinity-norm condition number via the explicit inverse.
template <typename T>
[[nodiscard]] double cond_inf(const Matrix<T>& a) {
    return norm_inf(a) * norm_inf(inverse(a));
}

/// a^p by binary exponentiation; a^0 is the identity.
template <typename T>
[[nodiscard]] Matrix<T> mat_power(const Matrix<T>& a, unsigned p) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("mat_power requires a square matrix");
    Matrix<T> result = Matrix<T>::identity(a.rows());
    Matrix<T> base = a;
    while (p > 0) {
        if (p & 1u) result = result * base;
        p >>= 1u;
        if (p > 0) base = base * base;
    }
    return result;
}

}  // namespace vgb
