// SPDX-License-Identifier: Apache-2.0
#include "vgb/gauss_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vgb/special_functions.hpp"

namespace vgb {

namespace {

// Implicit-shift QL with Wilkinson shifts on a symmetric tridiagonal matrix.
// d: diagonal, e: subdiagonal (e[0..n-2] used). z is rotated alongside, so
// that on return z_i is the first component of the i-th eigenvector scaled
// by the initial z. Eigenvalues in d, sorted ascending.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const std::size_t n = d.size();
    if (n == 1) return;
    constexpr double prec = 2.220446049250313e-16;
    constexpr int max_sweeps = 30;
    e.resize(n, 0.0);

    for (std::size_t l = 0; l < n; ++l) {
        int sweeps = 0;
        for (;;) {
            std::size_t m = l;
            while (m + 1 < n && std::abs(e[m]) > prec * (std::abs(d[m]) + std::abs(d[m + 1]))) ++m;
            if (m == l) break;
            if (++sweeps > max_sweeps)
                throw Error("tridiagonal QL failed to converge after 30 sweeps");

            double p = d[l];
            double g = (d[l + 1] - p) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - p + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0;
            p = 0.0;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                if (std::abs(g) <= std::abs(f)) {
                    c = g / f;
                    r = std::hypot(c, 1.0);
                    e[i + 1] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = std::hypot(s, 1.0);
                    e[i + 1] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Sort eigenvalues ascending, permuting z alongside.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t k = i;
        for (std::size_t j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            std::swap(z[i], z[k]);
        }
    }
}

}  // namespace

JacobiRule::JacobiRule(double alpha, double beta, std::size_t n) : alpha_(alpha), beta_(beta) {
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw InvalidExponent("Jacobi weight requires alpha > -1 and beta > -1, got alpha = " +
                              std::to_string(alpha) + ", beta = " + std::to_string(beta));
    if (n < 1) throw DomainViolation("Jacobi rule requires n >= 1");

    // Three-term recurrence of the [-1,1] Jacobi polynomials in symmetric
    // tridiagonal form: d holds the diagonal, e the subdiagonal.
    const double ab = alpha + beta;
    std::vector<double> d(n), e(n, 0.0);
    d[0] = (beta - alpha) / (ab + 2.0);
    if (n > 1) {
        // Cancelled form of b_1: the (alpha+beta+1) factor of the generic
        // formula drops out, which keeps alpha+beta+1 = 0 well defined.
        e[0] = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) /
                         ((ab + 3.0) * (ab + 2.0) * (ab + 2.0)));
    }
    for (std::size_t i = 2; i <= n; ++i) {
        const double abi = 2.0 * i + ab;
        d[i - 1] = (beta * beta - alpha * alpha) / ((abi - 2.0) * abi);
        if (i < n)
            e[i - 1] = std::sqrt(4.0 * i * (i + alpha) * (i + beta) * (i + ab) /
                                 ((abi * abi - 1.0) * abi * abi));
    }

    // Golub-Welsch: weights are the squared first eigenvector components
    // scaled by the zeroth moment of the weight on [0,1].
    const double moment0 = beta_function(beta + 1.0, alpha + 1.0);
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    tridiagonal_ql(d, e, z);

    nodes_.resize(n);
    weights_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        nodes_[k] = 0.5 * (d[k] + 1.0);
        weights_[k] = moment0 * z[k] * z[k];
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (!(nodes_[k] > 0.0 && nodes_[k] < 1.0) || !(weights_[k] > 0.0))
            throw Error("Gauss-Jacobi construction produced an invalid node/weight pair");
        if (k > 0 && !(nodes_[k] > nodes_[k - 1]))
            throw Error("Gauss-Jacobi nodes are not strictly increasing");
    }
}

}  // namespace vgb
