#pragma once

#include <functional>
#include <string>

#include "pcops/quad.hpp"

namespace pcops::smoothness {

// A scalar function on R with closed-form derivatives up to `order`, plus the
// decay metadata needed to truncate Lp integrals over the real line.
struct TestFunction {
    std::string name;
    int order = 0;                                   // highest available derivative
    std::function<double(int, double)> derivatives;  // derivatives(k, x), 0 <= k <= order
    std::function<bool(int, double)> lp_member;      // is f^(k) in L_p?
    double decay_exponent = 0.0;                     // slowest |x|^-d rate among f..f^(order)
    std::function<double(double)> support_radius;    // eps -> R with tail mass < eps

    double operator()(double x) const { return derivatives(0, x); }

    /// k-th derivative at x; capability_error when k exceeds `order`.
    double deriv(int k, double x) const;
};

/// r-th forward difference of f^(deriv_order) at x with step t:
/// sum_{j=0..r} (-1)^(r-j) C(r,j) f^(deriv_order)(x + j t).
double forward_difference(const TestFunction& f, int deriv_order, int r, double t, double x);

/// Central second difference f^(k)(x+y) + f^(k)(x-y) - 2 f^(k)(x).
double central_second_difference(const TestFunction& f, int deriv_order, double y, double x);

/// tau(w, x) = sum_{j=0..r} alpha_j j^n f^(n)(x + j w) - delta_n f^(n)(x).
/// Equals forward_difference(f, n, r, w, x) identically.
double tau(const TestFunction& f, int r, int n, double w, double x);

/// r-th Lp modulus of smoothness of f^(deriv_order):
///   sup over |t| <= h of the Lp norm in x of the r-th forward difference.
/// Translation invariance of the norm reduces the sup to t in [0, h]; it is
/// approximated from below on a refining grid (doubling until the value moves
/// by less than refine_threshold, relative).
double modulus_of_smoothness(const TestFunction& f, int deriv_order, int r, double h,
                             double p, const quad::QuadratureSpec& spec = {},
                             double refine_threshold = 1e-3);

} // namespace pcops::smoothness
