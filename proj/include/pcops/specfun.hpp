#pragma once

#include <cstdint>
#include <span>

namespace pcops::specfun {

/// ln Gamma(x) for x > 0. Fixed-coefficient Lanczos approximation, relative
/// error below 1e-13 on [1e-3, 1e3]. Throws std::domain_error for x <= 0 or
/// non-finite x.
double log_gamma(double x);

/// exp(sum ln Gamma(numers) - sum ln Gamma(denoms)), evaluated in log space
/// so that large arguments do not overflow. All arguments must be positive.
double gamma_ratio(std::span<const double> numers, std::span<const double> denoms);

/// Exact binomial coefficient. Requires 0 <= j <= r and r <= 62 so the result
/// fits in a signed 64-bit integer. j > r is a domain error, r > 62 a range
/// error.
std::int64_t binomial(int r, int j);

} // namespace pcops::specfun
