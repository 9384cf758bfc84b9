#pragma once

#include "pcops/coefficients.hpp"
#include "pcops/kernel.hpp"
#include "pcops/smoothness.hpp"

namespace pcops::operators {

using kernel::KernelParams;
using quad::QuadratureSpec;
using smoothness::TestFunction;

// Full parameter tuple of one operator run. n = 0 selects the pure signed
// binomial coefficient scheme used by the n = 0 statements.
struct OperatorParams {
    int r = 1;
    int n = 1;
    KernelParams kp{};
    double p = 2.0;

    void validate() const;
};

/// Operator value
///   M_{r,xi}(f; x) = W * integral over R of
///       (sum_{j=0..r} alpha_j f(x + j t)) / (t^(2a) + xi^(2a))^b dt.
/// Reproduces constants exactly up to quadrature error.
double apply_M(const TestFunction& f, const OperatorParams& op, double x,
               const QuadratureSpec& spec = {});

/// M_{r,xi}(f; x) - f(x) computed from the deviation integrand
/// sum_j alpha_j f(x+jt) - f(x), which vanishes with the error itself and so
/// keeps the relative accuracy of small errors.
double operator_deviation(const TestFunction& f, const OperatorParams& op, double x,
                          const QuadratureSpec& spec = {});

/// Symmetric convolution operator M_xi(f; x) = W * integral f(x+y) kernel(y) dy,
/// evaluated in the folded half-line form W * int_0^inf (f(x+y) + f(x-y)) kernel dy.
/// Identical to apply_M with r = 1.
double apply_M_symmetric(const TestFunction& f, const KernelParams& kp, double x,
                         const QuadratureSpec& spec = {});

/// M_xi(f; x) - f(x) via the central-difference half-line form
/// W * int_0^inf (f(x+y) + f(x-y) - 2 f(x)) kernel(y) dy.
double symmetric_deviation(const TestFunction& f, const KernelParams& kp, double x,
                           const QuadratureSpec& spec = {});

/// Corrected error of the unsymmetric operator:
///   Delta(x) = M_{r,xi}(f;x) - f(x)
///            - sum_{m=1..floor(n/2)} f^(2m)(x) delta_2m / (2m)!
///              * [Gamma((2m+1)/2a) Gamma(b-(2m+1)/2a) / (Gamma(1/2a) Gamma(b-1/2a))] xi^(2m).
/// Requires n >= 1, n <= f.order and beta > (2 floor(n/2) + 1)/(2 alpha).
double error_Delta(const TestFunction& f, const OperatorParams& op, double x,
                   const QuadratureSpec& spec = {});

/// Taylor remainder R_n(0, t, x) = int_0^t ((t-w)^(n-1)/(n-1)!) tau(w, x) dw.
double remainder_Rn(const TestFunction& f, const OperatorParams& op, double t, double x,
                    const QuadratureSpec& spec = {});

/// R*_n(x) = W * integral over R of R_n(0,t,x) * kernel(t) dt. Equals
/// error_Delta(x); the two routes cross-check each other. The inner
/// quadrature runs at a floor tolerance of 1e-8 so the double integral stays
/// affordable.
double remainder_Rstar(const TestFunction& f, const OperatorParams& op, double x,
                       const QuadratureSpec& spec = {});

/// Corrected error of the symmetric operator (n even, >= 2):
///   K(x) = M_xi(f;x) - f(x)
///        - sum_{rho=1..n/2} f^(2rho)(x)/(2rho)! * [Gamma ratio] xi^(2rho).
/// Requires beta > (n+1)/(2 alpha).
double error_K(const TestFunction& f, const KernelParams& kp, int n, double x,
               const QuadratureSpec& spec = {});

/// The half-line double-integral route to K(x):
///   W * int_0^inf [ int_0^y (central second difference of f^(n) at step t)
///                   * (y-t)^(n-1)/(n-1)! dt ] kernel(y) dy.
double error_K_remainder(const TestFunction& f, const KernelParams& kp, int n, double x,
                         const QuadratureSpec& spec = {});

} // namespace pcops::operators
