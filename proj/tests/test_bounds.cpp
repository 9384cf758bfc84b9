#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pcops/bounds.hpp"
#include "pcops/specfun.hpp"

using pcops::bounds::beta_threshold;
using pcops::bounds::bound_for;
using pcops::bounds::BoundReport;
using pcops::bounds::constraint_holds;
using pcops::bounds::prop2_integral;
using pcops::bounds::prop4_bound;
using pcops::bounds::rho_constant;
using pcops::bounds::StatementId;
using pcops::bounds::statement_from_name;
using pcops::bounds::statement_name;
using pcops::bounds::tau_constant;
using pcops::bounds::tau_tilde_constant;
using pcops::bounds::theta_constant;
using pcops::bounds::thm2_lambda_residual;
using pcops::kernel::halfline_moment;
using pcops::operators::OperatorParams;

namespace {

OperatorParams params(int r, int n, int alpha, double beta, double xi, double p) {
    return OperatorParams{r, n, {alpha, beta, xi}, p};
}

} // namespace

TEST_CASE("statement names round-trip") {
    for (const char* n : {"thm1", "thm2", "prop1", "prop2", "thm3", "thm4", "prop3", "prop4"})
        CHECK(statement_name(statement_from_name(n)) == std::string(n));
    CHECK_THROWS_AS(statement_from_name("thm9"), std::invalid_argument);
}

TEST_CASE("beta thresholds match the hypotheses") {
    const OperatorParams op = params(2, 2, 1, 8.0, 0.5, 2.0);
    CHECK(beta_threshold(StatementId::thm1, op) == doctest::Approx(4.5));
    CHECK(beta_threshold(StatementId::thm2, op) == doctest::Approx(2.5));
    CHECK(beta_threshold(StatementId::prop1, op) == doctest::Approx(2.5));
    CHECK(beta_threshold(StatementId::prop2, op) == doctest::Approx(1.5));
    CHECK(beta_threshold(StatementId::thm3, op) == doctest::Approx(4.5));
    CHECK(beta_threshold(StatementId::thm4, op) == doctest::Approx(2.5));
    CHECK(beta_threshold(StatementId::prop3, op) == doctest::Approx(2.5));
    CHECK(beta_threshold(StatementId::prop4, op) == doctest::Approx(1.5));
}

TEST_CASE("constraint checks enforce p and n shape") {
    CHECK(constraint_holds(StatementId::thm1, params(2, 2, 1, 8.0, 0.5, 2.0)));
    CHECK_FALSE(constraint_holds(StatementId::thm1, params(2, 2, 1, 8.0, 0.5, 1.0)));
    CHECK_FALSE(constraint_holds(StatementId::thm1, params(2, 2, 1, 4.5, 0.5, 2.0)));
    CHECK(constraint_holds(StatementId::thm2, params(1, 1, 1, 3.0, 0.5, 1.0)));
    CHECK_FALSE(constraint_holds(StatementId::thm2, params(1, 1, 1, 3.0, 0.5, 2.0)));
    CHECK_FALSE(constraint_holds(StatementId::thm3, params(1, 3, 1, 9.0, 0.5, 2.0)));
    CHECK_FALSE(constraint_holds(StatementId::thm4, params(1, 2, 1, 2.5, 0.5, 1.0)));
    CHECK(constraint_holds(StatementId::prop4, params(1, 0, 1, 2.0, 0.5, 1.0)));
}

TEST_CASE("tau constant against the brute-force oracle") {
    // p=2, n=1, r=1, alpha=1, beta=4: integrand ((1+u)^3 - 1) u / (u^2+1)^4
    auto f = [](double u) {
        return (std::pow(1.0 + u, 3.0) - 1.0) * u / std::pow(u * u + 1.0, 4.0);
    };
    const double oracle = oracles::integrate(f, 0.0, 1e5, 1e-13);
    CHECK(tau_constant(2.0, 1, 1, 1, 4.0) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("tau constant equals its binomial expansion for integer rp") {
    // rp + 1 = 3; tau = sum_{k=1..3} C(3,k) K_{np+k} with exponent p beta/2 = 4
    double expansion = 0.0;
    for (int k = 1; k <= 3; ++k)
        expansion += static_cast<double>(pcops::specfun::binomial(3, k)) *
                     halfline_moment(2 + k, 1, 4.0);
    CHECK(std::abs(tau_constant(2.0, 1, 1, 1, 4.0) - expansion) <= 1e-8 * expansion);
}

TEST_CASE("theta constant equals its binomial expansion") {
    // p=2, r=1: (1+t)^2 expands into three half-line moments with exponent 4
    double expansion = 0.0;
    for (int k = 0; k <= 2; ++k)
        expansion += static_cast<double>(pcops::specfun::binomial(2, k)) *
                     halfline_moment(k + 1, 1, 4.0);
    const double theta = theta_constant(2.0, 1, 1, 4.0);
    CHECK(theta > 0.0);
    CHECK(std::abs(theta - expansion) <= 1e-8 * expansion);
}

TEST_CASE("theta and tau_tilde against the brute-force oracle") {
    auto theta_integrand = [](double t) {
        return (1.0 + t) * (1.0 + t) / std::pow(t * t + 1.0, 4.0);
    };
    const double theta_ref = oracles::integrate(theta_integrand, 0.0, 1e4, 1e-13);
    CHECK(theta_constant(2.0, 1, 1, 4.0) == doctest::Approx(theta_ref).epsilon(1e-9));

    auto tt_integrand = [](double u) {
        return (std::pow(1.0 + u, 5.0) - 1.0) * u * u * u / std::pow(1.0 + u * u, 6.0);
    };
    const double tt_ref = oracles::integrate(tt_integrand, 0.0, 1e4, 1e-13);
    CHECK(tau_tilde_constant(2.0, 2, 1, 6.0) == doctest::Approx(tt_ref).epsilon(1e-9));
}

TEST_CASE("rho constant equals its binomial expansion") {
    // p=2: (1+y)^4, exponent beta p / 2 = 5
    double expansion = 0.0;
    for (int k = 0; k <= 4; ++k)
        expansion += static_cast<double>(pcops::specfun::binomial(4, k)) *
                     halfline_moment(k + 1, 1, 5.0);
    CHECK(std::abs(rho_constant(2.0, 1, 5.0) - expansion) <= 1e-8 * expansion);
}

TEST_CASE("tau_tilde constant equals its binomial expansion") {
    // p=2, n=2: ((1+u)^5 - 1) u^3, exponent 6
    double expansion = 0.0;
    for (int k = 1; k <= 5; ++k)
        expansion += static_cast<double>(pcops::specfun::binomial(5, k)) *
                     halfline_moment(4 + k, 1, 6.0);
    CHECK(std::abs(tau_tilde_constant(2.0, 2, 1, 6.0) - expansion) <= 1e-8 * expansion);
}

TEST_CASE("constant constraints are enforced") {
    CHECK_THROWS_AS(tau_constant(1.0, 1, 1, 1, 4.0), std::domain_error);
    CHECK_THROWS_AS(tau_constant(2.0, 1, 1, 1, 2.4), std::domain_error); // threshold 2.5
    CHECK_THROWS_AS(theta_constant(2.0, 1, 1, 1.4), std::domain_error);  // threshold 1.5
    CHECK_THROWS_AS(rho_constant(2.0, 1, 2.4), std::domain_error);       // threshold 2.5
    CHECK_THROWS_AS(tau_tilde_constant(2.0, 2, 1, 4.4), std::domain_error);
}

TEST_CASE("constant cache returns identical values") {
    const double a = theta_constant(2.0, 2, 1, 5.0);
    const double b = theta_constant(2.0, 2, 1, 5.0);
    CHECK(a == b);
}

TEST_CASE("bounds scale linearly in omega and vanish with it") {
    const std::pair<StatementId, OperatorParams> cases[] = {
        {StatementId::thm1, params(1, 1, 1, 4.0, 0.5, 2.0)},
        {StatementId::thm2, params(1, 1, 1, 3.0, 0.5, 1.0)},
        {StatementId::prop1, params(1, 0, 1, 4.0, 0.5, 2.0)},
        {StatementId::prop2, params(1, 0, 1, 2.0, 0.5, 1.0)},
        {StatementId::thm3, params(1, 2, 1, 6.0, 0.5, 2.0)},
        {StatementId::thm4, params(1, 2, 1, 4.0, 0.5, 1.0)},
        {StatementId::prop3, params(1, 0, 1, 4.0, 0.5, 2.0)},
        {StatementId::prop4, params(1, 0, 1, 2.0, 0.5, 1.0)},
    };
    for (const auto& [id, op] : cases) {
        CHECK(bound_for(id, op, 0.0).bound_value == 0.0);
        const double b1 = bound_for(id, op, 1.0).bound_value;
        const double b2 = bound_for(id, op, 2.0).bound_value;
        CHECK(b1 > 0.0);
        CHECK(b2 == doctest::Approx(2.0 * b1).epsilon(1e-13));
    }
}

TEST_CASE("thm1 prefactor assembled factor by factor") {
    const OperatorParams op = params(1, 1, 1, 4.0, 0.5, 2.0);
    const BoundReport rep = pcops::bounds::thm1_bound(op, 1.0);
    REQUIRE(rep.constraint_ok);
    const double q = 2.0, p = 2.0, beta = 4.0, xi = 0.5;
    const double tau = rep.constant_values.at("tau");
    // independent recombination through the C library lgamma
    const double ln_expected =
        std::log(2.0) / p + std::lgamma(beta) + std::lgamma(q * beta / 2.0 - 0.5) / q +
        std::log(xi) + std::log(tau) / p - std::lgamma(q * beta / 2.0) / q -
        std::lgamma(0.5) / p - std::lgamma(beta - 0.5) - std::log(1.0 * p + 1.0) / p -
        std::log(q * 0.0 + 1.0) / q;
    CHECK(rep.prefactor() == doctest::Approx(std::exp(ln_expected)).epsilon(1e-11));
}

TEST_CASE("thm1 closed form at p=2, n=1, r=1, alpha=1, beta=4") {
    // tau = 3 K_3 + 3 K_4 + K_5 = pi/8 + 1/4 and all Gamma factors are
    // elementary, so the prefactor collapses to 2 sqrt(tau) / sqrt(15 pi / 8)
    const BoundReport rep = pcops::bounds::thm1_bound(params(1, 1, 1, 4.0, 1.0, 2.0), 1.0);
    REQUIRE(rep.constraint_ok);
    const double tau_exact = M_PI / 8.0 + 0.25;
    const double pre_exact = 2.0 * std::sqrt(tau_exact) / std::sqrt(15.0 * M_PI / 8.0);
    CHECK(rep.constant_values.at("tau") == doctest::Approx(tau_exact).epsilon(1e-9));
    CHECK(rep.prefactor() == doctest::Approx(pre_exact).epsilon(1e-9));
}

TEST_CASE("thm1 bound scales as xi^n with omega held fixed") {
    for (int n : {1, 2}) {
        const OperatorParams a = params(1, n, 1, 8.0, 0.2, 2.0);
        const OperatorParams b = params(1, n, 1, 8.0, 0.4, 2.0);
        const double ratio =
            bound_for(StatementId::thm1, b, 1.0).bound_value /
            bound_for(StatementId::thm1, a, 1.0).bound_value;
        CHECK(ratio == doctest::Approx(std::pow(2.0, n)).epsilon(1e-12));
    }
}

TEST_CASE("thm2 bracket closed form") {
    const OperatorParams op = params(1, 1, 1, 3.0, 0.5, 1.0);
    const BoundReport rep = pcops::bounds::thm2_bound(op, 1.0);
    REQUIRE(rep.constraint_ok);
    const double bracket = (2.0 + M_PI / 4.0);
    const double expected_pre =
        bracket / (2.0 * 1.0 * std::sqrt(M_PI) * std::tgamma(2.5)) * 0.5; // * xi^1
    CHECK(rep.prefactor() == doctest::Approx(expected_pre).epsilon(1e-12));
    CHECK(rep.constant_values.at("lambda_residual") <= 1e-7);
}

TEST_CASE("thm2 lambda cross-check stays tight across xi") {
    for (double xi : {0.05, 0.4, 2.0})
        CHECK(thm2_lambda_residual(params(2, 2, 1, 4.0, xi, 1.0)) <= 1e-7);
}

TEST_CASE("prop1 prefactor assembled factor by factor") {
    const OperatorParams op = params(1, 0, 1, 4.0, 0.5, 2.0);
    const BoundReport rep = pcops::bounds::prop1_bound(op, 1.0);
    REQUIRE(rep.constraint_ok);
    const double theta = rep.constant_values.at("theta");
    const double ln_expected = std::log(2.0) / 2.0 + std::lgamma(4.0) +
                               std::lgamma(3.5) / 2.0 + std::log(theta) / 2.0 -
                               std::lgamma(0.5) / 2.0 - std::lgamma(3.5) -
                               std::lgamma(4.0) / 2.0;
    CHECK(rep.prefactor() == doctest::Approx(std::exp(ln_expected)).epsilon(1e-11));
}

TEST_CASE("prop2 closed-form value 1 + 2/pi") {
    const OperatorParams op = params(1, 0, 1, 2.0, 0.7, 1.0);
    const BoundReport rep = pcops::bounds::prop2_bound(op, 1.0);
    REQUIRE(rep.constraint_ok);
    CHECK(rep.prefactor() == doctest::Approx(1.0 + 2.0 / M_PI).epsilon(1e-10));
    CHECK(prop2_integral(1, 1, 2.0) == doctest::Approx(M_PI / 4.0 + 0.5).epsilon(1e-13));
}

TEST_CASE("thm3 prefactor assembled factor by factor") {
    const OperatorParams op = params(1, 2, 1, 6.0, 0.5, 2.0);
    const BoundReport rep = pcops::bounds::thm3_bound(op, 1.0);
    REQUIRE(rep.constraint_ok);
    const double tt = rep.constant_values.at("tau_tilde");
    const double p = 2.0, q = 2.0, beta = 6.0, n = 2.0, xi = 0.5;
    const double ln_expected =
        std::log(tt) / p + std::lgamma(q * beta / 2.0 - 0.5) / q - std::log(2.0) / q -
        std::lgamma(0.5) / p - std::lgamma(beta - 0.5) - std::lgamma(q * beta / 2.0) / q -
        std::log(q * (n - 1.0) + 1.0) / q - std::log(2.0 * p + 1.0) / p +
        std::lgamma(beta) + n * std::log(xi);
    CHECK(rep.prefactor() == doctest::Approx(std::exp(ln_expected)).epsilon(1e-11));
}

TEST_CASE("thm4 bracket closed form 3 + 3 pi/2") {
    const OperatorParams op = params(1, 2, 1, 4.0, 0.3, 1.0);
    const BoundReport rep = pcops::bounds::thm4_bound(op, 1.0);
    REQUIRE(rep.constraint_ok);
    const double bracket = rep.constant_values.at("bracket_over_gammas") *
                           std::sqrt(M_PI) * std::tgamma(3.5);
    CHECK(bracket == doctest::Approx(3.0 + 1.5 * M_PI).epsilon(1e-12));
    const double expected = (3.0 + 1.5 * M_PI) /
                            (6.0 * std::sqrt(M_PI) * std::tgamma(3.5)) * 0.09;
    CHECK(rep.prefactor() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("prop3 prefactor assembled factor by factor") {
    const OperatorParams op = params(1, 0, 1, 5.0, 0.5, 2.0);
    const BoundReport rep = pcops::bounds::prop3_bound(op, 1.0);
    REQUIRE(rep.constraint_ok);
    const double rho = rep.constant_values.at("rho");
    const double ln_expected = std::log(rho) / 2.0 + std::lgamma(5.0) +
                               std::lgamma(4.5) / 2.0 - std::log(2.0) / 2.0 -
                               std::lgamma(0.5) / 2.0 - std::lgamma(4.5) -
                               std::lgamma(5.0) / 2.0;
    CHECK(rep.prefactor() == doctest::Approx(std::exp(ln_expected)).epsilon(1e-11));
}

TEST_CASE("prop4 bracket and xi invariance") {
    const BoundReport rep = prop4_bound(1, 2.0, 1.0);
    REQUIRE(rep.constraint_ok);
    CHECK(std::abs(rep.constant_values.at("bracket") - (1.0 + 2.0 / M_PI)) <= 1e-6);
    // xi enters only through omega; the prefactor ignores it
    const double b1 = bound_for(StatementId::prop4, params(1, 0, 1, 2.0, 0.1, 1.0), 1.0)
                          .bound_value;
    const double b2 = bound_for(StatementId::prop4, params(1, 0, 1, 2.0, 3.0, 1.0), 1.0)
                          .bound_value;
    CHECK(b1 == b2);
}

TEST_CASE("violated constraints yield reports without bound values") {
    const BoundReport r1 = pcops::bounds::thm1_bound(params(2, 2, 1, 4.0, 0.5, 2.0), 1.0);
    CHECK_FALSE(r1.constraint_ok);
    CHECK(std::isnan(r1.bound_value));
    const BoundReport r2 = pcops::bounds::thm3_bound(params(1, 3, 1, 9.0, 0.5, 2.0), 1.0);
    CHECK_FALSE(r2.constraint_ok);
    const BoundReport r3 = pcops::bounds::thm1_bound(params(2, 2, 1, 8.0, 0.5, 1.0), 1.0);
    CHECK_FALSE(r3.constraint_ok); // p = 1 belongs to thm2
}

TEST_CASE("bounds are continuous in beta on the open constraint region") {
    double prev = -1.0;
    for (double beta : {6.0, 6.001, 6.002}) {
        const double b =
            bound_for(StatementId::thm1, params(1, 1, 1, beta, 0.5, 2.0), 1.0).bound_value;
        if (prev > 0.0) CHECK(std::abs(b - prev) / prev < 5e-3);
        prev = b;
    }
}
