#pragma once

#include "pcops/quad.hpp"

namespace pcops::kernel {

// Parameters of the kernel 1 / (t^(2a) + xi^(2a))^b. Requires a >= 1,
// xi > 0 and b > 1/(2a) (minimal integrability, makes W finite).
struct KernelParams {
    int alpha = 1;
    double beta = 1.0;
    double xi = 1.0;

    void validate() const; // throws std::domain_error
};

/// Kernel value at t, evaluated through logs so tiny xi with large beta does
/// not underflow.
double kernel_value(double t, const KernelParams& kp);

/// Normalization constant W = Gamma(b) a xi^(2ab-1) / (Gamma(1/2a) Gamma(b - 1/2a)),
/// the reciprocal of the kernel's integral over R.
double normalization_W(const KernelParams& kp);

/// Integral of t^k * kernel over R: exactly 0 for odd k; for even k the
/// closed Gamma form, which requires beta > (k+1)/(2 alpha) (divergence_error
/// otherwise).
double moment(int k, const KernelParams& kp);

/// Integral of T^(m-1) / (T^(2a) + 1)^b over [0, inf):
/// Gamma(m/2a) Gamma(b - m/2a) / (2a Gamma(b)). Requires b > m/(2a).
double halfline_moment(int m, int alpha, double beta);

} // namespace pcops::kernel
