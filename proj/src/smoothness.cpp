#include "pcops/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pcops/coefficients.hpp"
#include "pcops/specfun.hpp"

namespace pcops::smoothness {

double TestFunction::deriv(int k, double x) const {
    if (k < 0 || k > order)
        throw capability_error("TestFunction '" + name + "': derivative order " +
                               std::to_string(k) + " not available (max " +
                               std::to_string(order) + ")");
    return derivatives(k, x);
}

namespace {

std::vector<double> signed_binomials(int r) {
    std::vector<double> c(static_cast<size_t>(r) + 1);
    for (int j = 0; j <= r; ++j) {
        const double sign = ((r - j) % 2 == 0) ? 1.0 : -1.0;
        c[static_cast<size_t>(j)] = sign * static_cast<double>(specfun::binomial(r, j));
    }
    return c;
}

} // namespace

double forward_difference(const TestFunction& f, int deriv_order, int r, double t, double x) {
    if (r < 1) throw std::domain_error("forward_difference: r must be >= 1");
    const std::vector<double> c = signed_binomials(r);
    double acc = 0.0;
    for (int j = 0; j <= r; ++j)
        acc += c[static_cast<size_t>(j)] * f.deriv(deriv_order, x + j * t);
    return acc;
}

double central_second_difference(const TestFunction& f, int deriv_order, double y, double x) {
    return f.deriv(deriv_order, x + y) + f.deriv(deriv_order, x - y) -
           2.0 * f.deriv(deriv_order, x);
}

double tau(const TestFunction& f, int r, int n, double w, double x) {
    if (n < 1) throw std::domain_error("tau: n must be >= 1");
    const operators::CoefficientSet cs = operators::alphas(r, n);
    double acc = -cs.delta(n) * f.deriv(n, x);
    for (int j = 1; j <= r; ++j)
        acc += cs.alphas[static_cast<size_t>(j)] *
               std::pow(static_cast<double>(j), static_cast<double>(n)) *
               f.deriv(n, x + j * w);
    return acc;
}

double modulus_of_smoothness(const TestFunction& f, int deriv_order, int r, double h,
                             double p, const quad::QuadratureSpec& spec,
                             double refine_threshold) {
    if (r < 1) throw std::domain_error("modulus_of_smoothness: r must be >= 1");
    if (!(p >= 1.0)) throw std::domain_error("modulus_of_smoothness: p must be >= 1");
    if (!(h >= 0.0)) throw std::domain_error("modulus_of_smoothness: h must be >= 0");
    if (!f.lp_member(deriv_order, p))
        throw capability_error("modulus_of_smoothness: f^(" + std::to_string(deriv_order) +
                               ") not in L_p for p = " + std::to_string(p));
    if (h == 0.0) return 0.0;

    // Truncation radius covers the arguments shifted by up to r*h.
    const double radius = f.support_radius(spec.tail_tol) + r * h;
    const std::vector<double> c = signed_binomials(r);

    auto norm_at = [&](double t) -> double {
        if (t == 0.0) return 0.0;
        quad::Integrand g;
        g.eval = [&, t](double x) {
            double acc = 0.0;
            for (int j = 0; j <= r; ++j)
                acc += c[static_cast<size_t>(j)] * f.derivatives(deriv_order, x + j * t);
            return std::pow(std::abs(acc), p);
        };
        const double ip = quad::integrate_finite(g, -radius, radius, spec);
        return std::pow(std::max(ip, 0.0), 1.0 / p);
    };

    // Negative steps give the same norm by translation invariance, so the
    // grid only covers [0, h]. Refine until the sup estimate stabilizes.
    int m = 4;
    double best = 0.0;
    for (int i = 1; i <= m; ++i) best = std::max(best, norm_at(h * i / m));
    while (m < 1024) {
        const double prev = best;
        m *= 2;
        for (int i = 1; i < m; i += 2) best = std::max(best, norm_at(h * i / m));
        if (std::abs(best - prev) <= refine_threshold * std::max(best, 1e-300)) break;
    }
    return best;
}

} // namespace pcops::smoothness
