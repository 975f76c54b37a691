// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "vgb/errors.hpp"

namespace vgb {

template <typename T>
inline constexpr bool is_complex_v = false;
template <typename T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

template <typename T>
[[nodiscard]] inline bool is_finite(T x) {
    if constexpr (is_complex_v<T>) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    } else {
        return std::isfinite(x);
    }
}

/// Dense row-major matrix over double or complex<double>.
/// Values are immutable by convention once handed out of a constructor
/// or an arithmetic operation; all operations below return new matrices.
template <typename T>
class Matrix {
    static_assert(std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>,
                  "Matrix supports double and complex<double> scalars");

public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, T value = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, value) {
        if (rows == 0 || cols == 0)
            throw DimensionMismatch("Matrix requires rows >= 1 and cols >= 1");
    }

    [[nodiscard]] static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<const T> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    [[nodiscard]] bool all_finite() const {
        for (const T& v : data_)
            if (!is_finite(v)) return false;
        return true;
    }

    Matrix& operator+=(const Matrix& other) {
        require_same_shape(other, "operator+=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& other) {
        require_same_shape(other, "operator-=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
        return *this;
    }

    Matrix& operator*=(T scalar) {
        for (T& v : data_) v *= scalar;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, T scalar) { return a *= scalar; }
    friend Matrix operator*(T scalar, Matrix a) { return a *= scalar; }

    friend Matrix operator-(Matrix a) {
        for (T& v : a.data_) v = -v;
        return a;
    }

    /// Matrix product, cache-friendly i-k-j ordering.
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product: " + shape_string(a) + " x " +
                                    shape_string(b));
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            T* crow = c.data_.data() + i * c.cols_;
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) continue;
                const T* brow = b.data_.data() + k * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
            }
        }
        return c;
    }

    /// Matrix-vector product A x.
    [[nodiscard]] std::vector<T> apply(std::span<const T> x) const {
        if (cols_ != x.size())
            throw DimensionMismatch("matrix-vector product: " + shape_string(*this) + " x vec(" +
                                    std::to_string(x.size()) + ")");
        std::vector<T> y(rows_, T{});
        for (std::size_t i = 0; i < rows_; ++i) {
            const T* arow = data_.data() + i * cols_;
            T acc{};
            for (std::size_t j = 0; j < cols_; ++j) acc += arow[j] * x[j];
            y[i] = acc;
        }
        return y;
    }

    /// Transposed matrix-vector product A^T x (no explicit transpose).
    [[nodiscard]] std::vector<T> apply_transpose(std::span<const T> x) const {
        if (rows_ != x.size())
            throw DimensionMismatch("transposed product: " + shape_string(*this) + "^T x vec(" +
                                    std::to_string(x.size()) + ")");
        std::vector<T> y(cols_, T{});
        for (std::size_t i = 0; i < rows_; ++i) {
            const T xi = x[i];
            if (xi == T{}) continue;
            const T* arow = data_.data() + i * cols_;
            for (std::size_t j = 0; j < cols_; ++j) y[j] += arow[j] * xi;
        }
        return y;
    }

private:
    static std::string shape_string(const Matrix& m) {
        return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
    }

    void require_same_shape(const Matrix& other, const char* op) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw DimensionMismatch(std::string(op) + ": " + shape_string(*this) + " vs " +
                                    shape_string(other));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Infinity norm: maximum absolute row sum.
template <typename T>
[[nodiscard]] double norm_inf(const Matrix<T>& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double sum = 0.0;
        for (const T& v : a.row(i)) sum += std::abs(v);
        best = std::max(best, sum);
    }
    return best;
}

template <typename T>
[[nodiscard]] double norm_inf(std::span<const T> v) {
    double best = 0.0;
    for (const T& x : v) best = std::max(best, std::abs(x));
    return best;
}

}  // namespace vgb
