#include "pcops/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pcops/specfun.hpp"

namespace pcops::operators {

using kernel::kernel_value;
using kernel::normalization_W;
using quad::Integrand;
using quad::integrate_finite;
using quad::integrate_halfline;
using quad::integrate_realline;

void OperatorParams::validate() const {
    if (r < 1) throw std::domain_error("OperatorParams: r must be >= 1");
    if (n < 0) throw std::domain_error("OperatorParams: n must be >= 0");
    if (!(p >= 1.0)) throw std::domain_error("OperatorParams: p must be >= 1");
    kp.validate();
}

namespace {

double ipow(double x, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= x;
    return acc;
}

double factorial(int m) {
    double acc = 1.0;
    for (int i = 2; i <= m; ++i) acc *= i;
    return acc;
}

double tau_cached(const CoefficientSet& cs, const TestFunction& f, int r, int n,
                  double w, double x) {
    double acc = -cs.delta(n) * f.derivatives(n, x);
    for (int j = 1; j <= r; ++j)
        acc += cs.alphas[static_cast<size_t>(j)] * ipow(static_cast<double>(j), n) *
               f.derivatives(n, x + j * w);
    return acc;
}

// Gamma-ratio weight of the even-moment correction terms:
// Gamma((k+1)/2a) Gamma(b-(k+1)/2a) / (Gamma(1/2a) Gamma(b-1/2a)).
double moment_weight(int k, const kernel::KernelParams& kp) {
    const double inv2a = 1.0 / (2.0 * kp.alpha);
    const double arg = (k + 1) * inv2a;
    const double numer[2] = {arg, kp.beta - arg};
    const double denom[2] = {inv2a, kp.beta - inv2a};
    return specfun::gamma_ratio(numer, denom);
}

quad::QuadratureSpec floor_tolerances(quad::QuadratureSpec spec, double floor) {
    spec.abs_tol = std::max(spec.abs_tol, floor);
    spec.rel_tol = std::max(spec.rel_tol, floor);
    return spec;
}

} // namespace

double apply_M(const TestFunction& f, const OperatorParams& op, double x,
               const QuadratureSpec& spec) {
    op.validate();
    const CoefficientSet cs = alphas(op.r, op.n);
    const double w_const = normalization_W(op.kp);
    Integrand g;
    g.eval = [&](double t) {
        double acc = 0.0;
        for (int j = 0; j <= op.r; ++j)
            acc += cs.alphas[static_cast<size_t>(j)] * f.derivatives(0, x + j * t);
        return acc * w_const * kernel_value(t, op.kp);
    };
    g.decay_exponent_hint = 2.0 * op.kp.alpha * op.kp.beta;
    g.peak_scale = op.kp.xi;
    return integrate_realline(g, spec);
}

double operator_deviation(const TestFunction& f, const OperatorParams& op, double x,
                          const QuadratureSpec& spec) {
    op.validate();
    const CoefficientSet cs = alphas(op.r, op.n);
    const double w_const = normalization_W(op.kp);
    const double fx = f.derivatives(0, x);
    Integrand g;
    g.eval = [&](double t) {
        double acc = -fx;
        for (int j = 0; j <= op.r; ++j)
            acc += cs.alphas[static_cast<size_t>(j)] * f.derivatives(0, x + j * t);
        return acc * w_const * kernel_value(t, op.kp);
    };
    g.decay_exponent_hint = 2.0 * op.kp.alpha * op.kp.beta;
    g.peak_scale = op.kp.xi;
    return integrate_realline(g, spec);
}

double apply_M_symmetric(const TestFunction& f, const KernelParams& kp, double x,
                         const QuadratureSpec& spec) {
    kp.validate();
    const double w_const = normalization_W(kp);
    Integrand g;
    g.eval = [&](double y) {
        return (f.derivatives(0, x + y) + f.derivatives(0, x - y)) * w_const *
               kernel_value(y, kp);
    };
    g.decay_exponent_hint = 2.0 * kp.alpha * kp.beta;
    g.peak_scale = kp.xi;
    return integrate_halfline(g, spec);
}

double symmetric_deviation(const TestFunction& f, const KernelParams& kp, double x,
                           const QuadratureSpec& spec) {
    kp.validate();
    const double w_const = normalization_W(kp);
    const double fx2 = 2.0 * f.derivatives(0, x);
    Integrand g;
    g.eval = [&](double y) {
        return (f.derivatives(0, x + y) + f.derivatives(0, x - y) - fx2) * w_const *
               kernel_value(y, kp);
    };
    g.decay_exponent_hint = 2.0 * kp.alpha * kp.beta;
    g.peak_scale = kp.xi;
    return integrate_halfline(g, spec);
}

double error_Delta(const TestFunction& f, const OperatorParams& op, double x,
                   const QuadratureSpec& spec) {
    op.validate();
    if (op.n < 1) throw std::domain_error("error_Delta: n must be >= 1");
    if (op.n > f.order)
        throw capability_error("error_Delta: derivative order exceeds test function");
    const int half = op.n / 2;
    if (!(op.kp.beta > (2.0 * half + 1.0) / (2.0 * op.kp.alpha)))
        throw std::domain_error(
            "error_Delta: requires beta > (2 floor(n/2) + 1)/(2 alpha)");

    const double dev = operator_deviation(f, op, x, spec);
    const CoefficientSet cs = alphas(op.r, op.n);
    double corr = 0.0;
    for (int m = 1; m <= half; ++m)
        corr += f.deriv(2 * m, x) * cs.delta(2 * m) / factorial(2 * m) *
                moment_weight(2 * m, op.kp) * ipow(op.kp.xi, 2 * m);
    return dev - corr;
}

double remainder_Rn(const TestFunction& f, const OperatorParams& op, double t, double x,
                    const QuadratureSpec& spec) {
    op.validate();
    if (op.n < 1) throw std::domain_error("remainder_Rn: n must be >= 1");
    if (op.n > f.order)
        throw capability_error("remainder_Rn: derivative order exceeds test function");
    if (t == 0.0) return 0.0;

    const CoefficientSet cs = alphas(op.r, op.n);
    const double inv_fact = 1.0 / factorial(op.n - 1);
    Integrand g;
    g.eval = [&](double w) {
        return ipow(t - w, op.n - 1) * inv_fact * tau_cached(cs, f, op.r, op.n, w, x);
    };
    if (t > 0.0) return integrate_finite(g, 0.0, t, spec);
    return -integrate_finite(g, t, 0.0, spec);
}

double remainder_Rstar(const TestFunction& f, const OperatorParams& op, double x,
                       const QuadratureSpec& spec) {
    op.validate();
    if (op.n < 1) throw std::domain_error("remainder_Rstar: n must be >= 1");
    const int half = op.n / 2;
    if (!(op.kp.beta > (2.0 * half + 1.0) / (2.0 * op.kp.alpha)))
        throw std::domain_error(
            "remainder_Rstar: requires beta > (2 floor(n/2) + 1)/(2 alpha)");

    const QuadratureSpec inner = floor_tolerances(spec, 1e-8);
    const QuadratureSpec outer = floor_tolerances(spec, 1e-7);
    const double w_const = normalization_W(op.kp);

    // Folding the two tails cancels the odd leading term of R_n for odd n,
    // which is what makes the improper integral converge in that case.
    Integrand g;
    g.eval = [&](double t) {
        const double bracket = remainder_Rn(f, op, t, x, inner) +
                               remainder_Rn(f, op, -t, x, inner);
        return bracket * w_const * kernel_value(t, op.kp);
    };
    const double two_ab = 2.0 * op.kp.alpha * op.kp.beta;
    g.decay_exponent_hint = two_ab - op.n + (op.n % 2 == 1 ? 1.0 : 0.0);
    g.peak_scale = op.kp.xi;
    return integrate_halfline(g, outer);
}

double error_K(const TestFunction& f, const KernelParams& kp, int n, double x,
               const QuadratureSpec& spec) {
    kp.validate();
    if (n < 2 || n % 2 != 0) throw std::domain_error("error_K: n must be even and >= 2");
    if (n > f.order) throw capability_error("error_K: derivative order exceeds test function");
    if (!(kp.beta > (n + 1.0) / (2.0 * kp.alpha)))
        throw std::domain_error("error_K: requires beta > (n+1)/(2 alpha)");

    const double dev = symmetric_deviation(f, kp, x, spec);
    double corr = 0.0;
    for (int rho = 1; rho <= n / 2; ++rho)
        corr += f.deriv(2 * rho, x) / factorial(2 * rho) * moment_weight(2 * rho, kp) *
                ipow(kp.xi, 2 * rho);
    return dev - corr;
}

double error_K_remainder(const TestFunction& f, const KernelParams& kp, int n, double x,
                         const QuadratureSpec& spec) {
    kp.validate();
    if (n < 2 || n % 2 != 0)
        throw std::domain_error("error_K_remainder: n must be even and >= 2");
    if (n > f.order)
        throw capability_error("error_K_remainder: derivative order exceeds test function");
    if (!(kp.beta > (n + 1.0) / (2.0 * kp.alpha)))
        throw std::domain_error("error_K_remainder: requires beta > (n+1)/(2 alpha)");

    const QuadratureSpec inner = floor_tolerances(spec, 1e-8);
    const QuadratureSpec outer = floor_tolerances(spec, 1e-7);
    const double w_const = normalization_W(kp);
    const double inv_fact = 1.0 / factorial(n - 1);

    Integrand g;
    g.eval = [&](double y) {
        if (y == 0.0) return 0.0;
        Integrand inner_g;
        inner_g.eval = [&](double t) {
            return (f.derivatives(n, x + t) + f.derivatives(n, x - t) -
                    2.0 * f.derivatives(n, x)) *
                   ipow(y - t, n - 1) * inv_fact;
        };
        return integrate_finite(inner_g, 0.0, y, inner) * w_const *
               kernel_value(y, kp);
    };
    g.decay_exponent_hint = 2.0 * kp.alpha * kp.beta - n;
    g.peak_scale = kp.xi;
    return integrate_halfline(g, outer);
}

} // namespace pcops::operators
