// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace vgb {

/// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
/// Relative accuracy on the Gamma scale is ~1e-14 for x in (0, 20].
[[nodiscard]] double log_gamma(double x);

/// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
[[nodiscard]] double beta_function(double a, double b);

}  // namespace vgb
