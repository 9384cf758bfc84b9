#include "pcops/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "pcops/specfun.hpp"

namespace pcops::kernel {

using specfun::log_gamma;

void KernelParams::validate() const {
    if (alpha < 1) throw std::domain_error("KernelParams: alpha must be a positive integer");
    if (!(std::isfinite(xi) && xi > 0.0))
        throw std::domain_error("KernelParams: xi must be positive");
    if (!(std::isfinite(beta) && beta > 1.0 / (2.0 * alpha)))
        throw std::domain_error("KernelParams: beta must exceed 1/(2 alpha)");
}

double kernel_value(double t, const KernelParams& kp) {
    kp.validate();
    const double at = std::abs(t);
    const double m = std::max(at, kp.xi);
    const double two_a = 2.0 * kp.alpha;
    // log(t^2a + xi^2a) with the larger magnitude factored out; the bracket
    // stays in [1, 2].
    const double bracket = std::pow(at / m, two_a) + std::pow(kp.xi / m, two_a);
    const double log_u = two_a * std::log(m) + std::log(bracket);
    return std::exp(-kp.beta * log_u);
}

double normalization_W(const KernelParams& kp) {
    kp.validate();
    const double inv2a = 1.0 / (2.0 * kp.alpha);
    const double ln_w = log_gamma(kp.beta) + std::log(static_cast<double>(kp.alpha)) +
                        (2.0 * kp.alpha * kp.beta - 1.0) * std::log(kp.xi) -
                        log_gamma(inv2a) - log_gamma(kp.beta - inv2a);
    return std::exp(ln_w);
}

double moment(int k, const KernelParams& kp) {
    kp.validate();
    if (k < 0) throw std::domain_error("moment: k must be non-negative");
    if (k % 2 == 1) return 0.0;
    const double two_a = 2.0 * kp.alpha;
    const double arg = (k + 1) / two_a;
    if (!(kp.beta > arg))
        throw divergence_error("moment: requires beta > (k+1)/(2 alpha)");
    const double ln_m = log_gamma(arg) + log_gamma(kp.beta - arg) - log_gamma(kp.beta) -
                        std::log(static_cast<double>(kp.alpha)) -
                        (two_a * kp.beta - k - 1.0) * std::log(kp.xi);
    return std::exp(ln_m);
}

double halfline_moment(int m, int alpha, double beta) {
    if (m < 1) throw std::domain_error("halfline_moment: m must be positive");
    if (alpha < 1) throw std::domain_error("halfline_moment: alpha must be positive");
    const double two_a = 2.0 * alpha;
    const double arg = m / two_a;
    if (!(std::isfinite(beta) && beta > arg))
        throw std::domain_error("halfline_moment: requires beta > m/(2 alpha)");
    return std::exp(log_gamma(arg) + log_gamma(beta - arg) - log_gamma(beta) -
                    std::log(two_a));
}

} // namespace pcops::kernel
