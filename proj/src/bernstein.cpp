// SPDX-License-Identifier: Apache-2.0
#include "vgb/bernstein.hpp"

#include <cmath>

namespace vgb {

BernsteinBasis::BernsteinBasis(std::size_t degree) : degree_(degree) {
    if (degree < 1) throw DomainViolation("Bernstein basis requires degree >= 1");
    log_binomial_.resize(degree + 1);
    // log C(m,k) accumulated in extended precision; the running sum reaches
    // ~700 for m = 1024 and plain double accumulation would cost ~1e-13
    // of relative accuracy in the exponentiated entries.
    long double acc = 0.0L;
    log_binomial_[0] = 0.0;
    for (std::size_t k = 0; k < degree; ++k) {
        acc += std::log(static_cast<long double>(degree - k)) -
               std::log(static_cast<long double>(k + 1));
        log_binomial_[k + 1] = static_cast<double>(acc);
    }
}

void BernsteinBasis::evaluate(double x, std::span<double> out) const {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainViolation("Bernstein basis argument outside [0,1]: " + std::to_string(x));
    if (out.size() != degree_ + 1)
        throw DimensionMismatch("basis output span has wrong length");

    if (x == 0.0 || x == 1.0) {
        for (double& v : out) v = 0.0;
        out[x == 0.0 ? 0 : degree_] = 1.0;
        return;
    }
    const double log_x = std::log(x);
    const double log_1mx = std::log1p(-x);
    const double m = static_cast<double>(degree_);
    for (std::size_t k = 0; k <= degree_; ++k) {
        const double dk = static_cast<double>(k);
        out[k] = std::exp(log_binomial_[k] + dk * log_x + (m - dk) * log_1mx);
    }
}

std::vector<double> bernstein_basis_at(std::size_t degree, double x) {
    return BernsteinBasis(degree).evaluate(x);
}

Matrix<double> collocation_matrix(std::size_t degree) {
    const BernsteinBasis basis(degree);
    Matrix<double> a(degree + 1, degree + 1);
    for (std::size_t i = 0; i <= degree; ++i) basis.evaluate(basis.node(i), a.row(i));
    return a;
}

namespace {

// Returns (S_l, (I-A)^l) with S_l = I + (I-A) + ... + (I-A)^{l-1}.
// Even split S_{2k} = S_k + (I-A)^k S_k, odd step S_{l} = I + (I-A) S_{l-1}:
// O(log l) matrix products.
std::pair<Matrix<double>, Matrix<double>> geometric_sum(const Matrix<double>& b, unsigned l) {
    if (l == 1) return {Matrix<double>::identity(b.rows()), b};
    if (l % 2 == 0) {
        auto [s, p] = geometric_sum(b, l / 2);
        return {s + p * s, p * p};
    }
    auto [s, p] = geometric_sum(b, l - 1);
    return {Matrix<double>::identity(b.rows()) + b * s, p * b};
}

}  // namespace

Matrix<double> gb_matrix(const Matrix<double>& collocation, unsigned iterations) {
    if (iterations < 1) throw DomainViolation("gb_matrix requires iterations >= 1");
    if (iterations == 1) return Matrix<double>::identity(collocation.rows());
    const Matrix<double> b = Matrix<double>::identity(collocation.rows()) - collocation;
    return geometric_sum(b, iterations).first;
}

Matrix<double> gb_matrix(std::size_t degree, unsigned iterations) {
    return gb_matrix(collocation_matrix(degree), iterations);
}

GBOperator::GBOperator(std::size_t degree, unsigned iterations)
    : basis_(degree),
      iterations_(iterations),
      collocation_(collocation_matrix(degree)),
      basis_change_(gb_matrix(collocation_, iterations)) {}

std::vector<double> GBOperator::basis_at(double x) const {
    const std::vector<double> p = basis_.evaluate(x);
    return basis_change_.apply_transpose(p);
}

}  // namespace vgb
