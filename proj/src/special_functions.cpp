// SPDX-License-Identifier: Apache-2.0
#include "vgb/special_functions.hpp"

#include <cmath>

#include "vgb/errors.hpp"

namespace vgb {

namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's tabulation).
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,   676.5203681218851,      -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6,  1.5056327351493116e-7,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2*pi)/2

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainViolation("log_gamma requires x > 0, got " + std::to_string(x));
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double series = kLanczosCoeff[0];
    for (int k = 1; k < 9; ++k) series += kLanczosCoeff[k] / (z + k);
    const double t = z + kLanczosG + 0.5;
    return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(series);
}

double beta_function(double a, double b) {
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

}  // namespace vgb
