#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pcops/kernel.hpp"

using pcops::divergence_error;
using pcops::kernel::halfline_moment;
using pcops::kernel::kernel_value;
using pcops::kernel::KernelParams;
using pcops::kernel::moment;
using pcops::kernel::normalization_W;
using pcops::quad::Integrand;

TEST_CASE("kernel_value by direct substitution") {
    CHECK(kernel_value(0.0, {1, 1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kernel_value(1.0, {1, 2.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(kernel_value(2.0, {2, 1.5, 1.0}) ==
          doctest::Approx(std::pow(17.0, -1.5)).epsilon(1e-13));
}

TEST_CASE("kernel_value survives tiny xi and huge t") {
    const KernelParams kp{2, 10.0, 1e-7};
    CHECK(kernel_value(0.0, kp) == doctest::Approx(1e280).epsilon(1e-10));
    CHECK(std::isfinite(kernel_value(1e100, kp)));
    CHECK(kernel_value(1e100, kp) >= 0.0);
}

TEST_CASE("normalization constant closed forms") {
    CHECK(normalization_W({1, 1.0, 1.0}) == doctest::Approx(1.0 / M_PI).epsilon(1e-13));
    CHECK(normalization_W({1, 1.0, 2.0}) == doctest::Approx(2.0 / M_PI).epsilon(1e-13));
    CHECK(normalization_W({1, 2.0, 1.0}) == doctest::Approx(2.0 / M_PI).epsilon(1e-13));
}

TEST_CASE("W normalizes the kernel integral on a parameter grid") {
    for (int alpha : {1, 2})
        for (double beta : {1.0, 2.5})
            for (double xi : {0.1, 1.0, 4.0}) {
                const KernelParams kp{alpha, beta, xi};
                Integrand g;
                g.eval = [kp](double t) { return kernel_value(t, kp); };
                g.decay_exponent_hint = 2.0 * alpha * beta;
                g.peak_scale = xi;
                const double total = pcops::quad::integrate_realline(g);
                CHECK(std::abs(normalization_W(kp) * total - 1.0) <= 1e-8);
            }
}

TEST_CASE("normalization holds down to tiny xi (peak seeding)") {
    // the kernel peak at xi = 1e-3 is far narrower than the initial domain;
    // the +-{1,2,4,8} xi panel seeds must resolve it
    for (double xi : {1e-3, 1e-2}) {
        const KernelParams kp{1, 2.0, xi};
        Integrand g;
        g.eval = [kp](double t) { return kernel_value(t, kp); };
        g.decay_exponent_hint = 4.0;
        g.peak_scale = xi;
        const double total = pcops::quad::integrate_realline(g);
        CHECK(std::abs(normalization_W(kp) * total - 1.0) <= 1e-8);
    }
}

TEST_CASE("odd moments are exactly zero") {
    CHECK(moment(1, {1, 2.0, 1.0}) == 0.0);
    CHECK(moment(3, {2, 1.5, 0.3}) == 0.0);
}

TEST_CASE("even moments match closed forms") {
    CHECK(moment(2, {1, 2.0, 1.0}) == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
    CHECK(moment(0, {1, 1.0, 1.0}) == doctest::Approx(M_PI).epsilon(1e-13));
}

TEST_CASE("even moments agree with quadrature") {
    const KernelParams cases[] = {{1, 2.0, 1.0}, {1, 4.0, 0.5}, {2, 1.5, 2.0}};
    for (const KernelParams& kp : cases)
        for (int k : {0, 2}) {
            if (!(kp.beta > (k + 1.0) / (2.0 * kp.alpha))) continue;
            Integrand g;
            g.eval = [kp, k](double t) { return std::pow(t, k) * kernel_value(t, kp); };
            g.decay_exponent_hint = 2.0 * kp.alpha * kp.beta - k;
            g.peak_scale = kp.xi;
            const double via_quad = pcops::quad::integrate_realline(g);
            const double closed = moment(k, kp);
            CHECK(std::abs(via_quad - closed) / closed <= 1e-7);
        }
}

TEST_CASE("moment scaling law in xi") {
    for (double xi : {0.05, 0.7, 3.0}) {
        const KernelParams kp{2, 2.0, xi};
        const KernelParams unit{2, 2.0, 1.0};
        for (int k : {0, 2, 4}) {
            const double predicted =
                std::pow(xi, k + 1.0 - 2.0 * kp.alpha * kp.beta) * moment(k, unit);
            CHECK(std::abs(moment(k, kp) - predicted) <= 1e-10 * std::abs(predicted));
        }
    }
}

TEST_CASE("half-line moment closed forms") {
    CHECK(halfline_moment(1, 1, 1.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
    CHECK(halfline_moment(2, 1, 2.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(halfline_moment(3, 1, 2.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-13));
}

TEST_CASE("half-line moment agrees with the brute-force oracle") {
    // truncated oracle integral; the tail beyond 1e5 is below 1e-10 here
    auto f = [](double t) { return t * t / std::pow(t * t + 1.0, 2.5); };
    const double ref = oracles::integrate(f, 0.0, 1e5, 1e-11);
    CHECK(std::abs(halfline_moment(3, 1, 2.5) - ref) <= 1e-7 * ref);
}

TEST_CASE("constraint violations raise") {
    CHECK_THROWS_AS(moment(2, {1, 1.0, 1.0}), divergence_error); // needs beta > 3/2
    CHECK_THROWS_AS(moment(4, {1, 2.0, 1.0}), divergence_error); // needs beta > 5/2
    CHECK_THROWS_AS(halfline_moment(3, 1, 1.5), std::domain_error);
    CHECK_THROWS_AS(halfline_moment(0, 1, 2.0), std::domain_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((KernelParams{0, 1.0, 1.0}).validate(), std::domain_error);
    CHECK_THROWS_AS((KernelParams{1, 0.4, 1.0}).validate(), std::domain_error); // beta <= 1/2
    CHECK_THROWS_AS((KernelParams{1, 1.0, 0.0}).validate(), std::domain_error);
    CHECK_THROWS_AS((KernelParams{1, 1.0, -2.0}).validate(), std::domain_error);
    CHECK_NOTHROW((KernelParams{2, 0.3, 1.0}).validate()); // 0.3 > 1/4
}
