#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "pcops/errors.hpp"

namespace pcops::quad {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    double tail_tol = 1e-12; // truncation criterion for improper integrals

    void validate() const; // throws std::invalid_argument
};

struct Integrand {
    std::function<double(double)> eval;
    std::vector<double> known_singularities{};
    // Asymptotic |g(t)| = O(|t|^-d) hint; d > 1 required for improper
    // integrals. NaN means "unknown".
    double decay_exponent_hint = std::numeric_limits<double>::quiet_NaN();
    // Width of the sharpest feature near 0 (the kernel scale xi). When set,
    // initial panel boundaries are placed at 0 and {1,2,4,8}*peak_scale.
    double peak_scale = 0.0;
};

/// Adaptive Gauss-Kronrod (G7,K15) quadrature of g over [a, b]. Panels are
/// bisected worst-error-first; the returned value is the sum of panel
/// estimates in ascending interval order, so identical inputs give
/// bit-identical results. Throws convergence_error when the subdivision
/// budget runs out before the tolerance is met.
double integrate_finite(const Integrand& g, double a, double b,
                        const QuadratureSpec& spec = {});

/// Integral of g over [0, inf). The tail beyond the truncation radius is
/// bounded analytically through decay_exponent_hint (the constant is
/// estimated by sampling), so the hint must satisfy d > 1.
double integrate_halfline(const Integrand& g, const QuadratureSpec& spec = {});

/// Integral of g over the whole real line; truncation as in
/// integrate_halfline applied to both tails.
double integrate_realline(const Integrand& g, const QuadratureSpec& spec = {});

/// (integral of |g|^p over R)^(1/p) for p >= 1. Requires
/// decay_exponent_hint * p > 1.
double lp_norm(const Integrand& g, double p, const QuadratureSpec& spec = {});

} // namespace pcops::quad
