#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pcops/harness.hpp"

using pcops::bounds::StatementId;
using pcops::harness::audit_identities;
using pcops::harness::builtin_corpus;
using pcops::harness::ConvergenceReport;
using pcops::harness::CorpusEntry;
using pcops::harness::corpus_entry;
using pcops::harness::fit_slope;
using pcops::harness::geometric_grid;
using pcops::harness::HarnessConfig;
using pcops::harness::run_convergence;
using pcops::operators::OperatorParams;

TEST_CASE("corpus contains the required entries") {
    for (const char* name : {"gaussian", "cauchy_bump", "modulated_gaussian", "rational3"}) {
        const CorpusEntry& e = corpus_entry(name);
        CHECK(e.f.order >= 4);
        CHECK_FALSE(e.notes.empty());
    }
    CHECK_THROWS_AS(corpus_entry("nope"), std::invalid_argument);
}

TEST_CASE("corpus derivative spot values") {
    const auto& gauss = corpus_entry("gaussian").f;
    CHECK(gauss.deriv(1, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(gauss.deriv(2, 0.0) == doctest::Approx(-2.0).epsilon(1e-14));
    const auto& bump = corpus_entry("cauchy_bump").f;
    CHECK(bump.deriv(1, 1.0) == doctest::Approx(-0.5).epsilon(1e-14));
    const auto& mg = corpus_entry("modulated_gaussian").f;
    CHECK(mg(0.7) == doctest::Approx(std::sin(2.1) * std::exp(-0.49)).epsilon(1e-14));
    const auto& r3 = corpus_entry("rational3").f;
    CHECK(r3(2.0) == doctest::Approx(std::pow(5.0, -3.0)).epsilon(1e-14));
}

TEST_CASE("corpus derivatives agree with central finite differences") {
    const double h = 1e-5;
    for (const CorpusEntry& e : builtin_corpus()) {
        for (int k = 1; k <= 4; ++k) {
            for (int i = 0; i < 25; ++i) {
                const double x = -2.4 + 0.2 * i;
                const double fd =
                    (e.f.deriv(k - 1, x + h) - e.f.deriv(k - 1, x - h)) / (2.0 * h);
                const double exact = e.f.deriv(k, x);
                CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

TEST_CASE("support radii really capture the L1 mass") {
    // closed-form tails at eps = 1e-3
    const double eps = 1e-3;
    const double r_bump = corpus_entry("cauchy_bump").f.support_radius(eps);
    CHECK(2.0 * (M_PI / 2.0 - std::atan(r_bump)) < eps);
    const double r_gauss = corpus_entry("gaussian").f.support_radius(eps);
    CHECK(std::exp(-r_gauss * r_gauss) / r_gauss < eps);
}

TEST_CASE("decay metadata is consistent beyond the support radius") {
    // |f(x)| x^d must stay bounded; 5% headroom covers the approach to the
    // asymptotic constant from below
    for (const char* name : {"cauchy_bump", "rational3"}) {
        const auto& f = corpus_entry(name).f;
        const double r0 = f.support_radius(1e-3);
        const double c = std::abs(f(r0)) * std::pow(r0, f.decay_exponent);
        for (double m : {2.0, 8.0, 64.0}) {
            const double x = m * r0;
            CHECK(std::abs(f(x)) <= 1.05 * c * std::pow(x, -f.decay_exponent));
        }
    }
}

TEST_CASE("fit_slope recovers exact power laws") {
    const std::vector<double> xi{0.4, 0.2, 0.1, 0.05};
    std::vector<double> sq, lin;
    for (double v : xi) {
        sq.push_back(3.7 * v * v);
        lin.push_back(0.2 * v);
    }
    CHECK(fit_slope(xi, sq) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit_slope(xi, lin) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_slope tolerates 5% multiplicative noise") {
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    const std::vector<double> xi{0.8, 0.4, 0.2, 0.1, 0.05, 0.025};
    std::vector<double> err;
    for (double v : xi) err.push_back(1.3 * v * v * (1.0 + noise(rng)));
    CHECK(std::abs(fit_slope(xi, err) - 2.0) <= 0.15);
}

TEST_CASE("fit_slope input validation") {
    const std::vector<double> two{0.4, 0.2};
    CHECK_THROWS_AS(fit_slope(two, two), std::domain_error);
    const std::vector<double> xi{0.4, 0.2, 0.1};
    const std::vector<double> bad{1.0, 0.0, 0.1};
    CHECK_THROWS_AS(fit_slope(xi, bad), std::domain_error);
}

TEST_CASE("geometric grids") {
    const auto g = geometric_grid(0.4, 0.05, 0.5);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == doctest::Approx(0.4));
    CHECK(g[3] == doctest::Approx(0.05));
    CHECK_THROWS_AS(geometric_grid(0.1, 0.4, 0.5), std::domain_error);
    CHECK_THROWS_AS(geometric_grid(0.4, 0.1, 1.5), std::domain_error);
}

TEST_CASE("config parsing applies overrides") {
    const HarnessConfig cfg = HarnessConfig::from_json_text(
        R"({"quad": {"abs_tol": 1e-9, "max_subdivisions": 500},
            "omega_safety": 1.02, "parallelism": 2})");
    CHECK(cfg.op_quad.abs_tol == 1e-9);
    CHECK(cfg.op_quad.max_subdivisions == 500);
    CHECK(cfg.omega_safety == 1.02);
    CHECK(cfg.parallelism == 2);
    CHECK_THROWS(HarnessConfig::from_json_text(R"({"parallelism": 0})"));
    CHECK_THROWS(HarnessConfig::from_json_text(R"({"omega_safety": 0.9})"));
}

TEST_CASE("constant corpus entry yields vanishing errors") {
    const ConvergenceReport rep =
        run_convergence(StatementId::thm1, corpus_entry("constant"),
                        OperatorParams{2, 2, {1, 8.0, 1.0}, 2.0}, {0.4, 0.2});
    for (const auto& pt : rep.points) {
        CHECK(pt.ok);
        CHECK(pt.error_lp <= 1e-7);
    }
}

TEST_CASE("thm1 sweep on the gaussian obeys the bound and the rate") {
    HarnessConfig cfg;
    cfg.parallelism = 2;
    const ConvergenceReport rep =
        run_convergence(StatementId::thm1, corpus_entry("gaussian"),
                        OperatorParams{2, 2, {1, 8.0, 1.0}, 2.0}, {0.4, 0.2, 0.1}, cfg);
    REQUIRE(rep.points.size() == 3);
    for (const auto& pt : rep.points) {
        REQUIRE(pt.ok);
        CHECK(pt.error_lp > 0.0);
        CHECK(pt.ratio <= cfg.ratio_slack);
    }
    CHECK(rep.points[0].error_lp > rep.points[1].error_lp);
    CHECK(rep.fitted_slope >= 1.7);
    CHECK(rep.constants.count("tau") == 1);
}

TEST_CASE("hypothesis violations are refused with a diagnostic") {
    CHECK_THROWS_AS(run_convergence(StatementId::thm1, corpus_entry("gaussian"),
                                    OperatorParams{2, 2, {1, 8.0, 1.0}, 1.0}, {0.4, 0.2}),
                    std::domain_error); // p = 1 is the thm2 route
    CHECK_THROWS_AS(run_convergence(StatementId::thm1, corpus_entry("gaussian"),
                                    OperatorParams{2, 2, {1, 4.0, 1.0}, 2.0}, {0.4}),
                    std::domain_error); // beta below threshold
    CorpusEntry no_lp = corpus_entry("gaussian");
    no_lp.f.lp_member = [](int, double) { return false; };
    CHECK_THROWS_AS(run_convergence(StatementId::thm1, no_lp,
                                    OperatorParams{2, 2, {1, 8.0, 1.0}, 2.0}, {0.4}),
                    std::domain_error);
    CHECK_THROWS_AS(run_convergence(StatementId::thm1, corpus_entry("gaussian"),
                                    OperatorParams{2, 2, {1, 8.0, 1.0}, 2.0}, {0.2, 0.4}),
                    std::domain_error); // grid must decrease
}

TEST_CASE("per-xi quadrature failures are flagged but reported") {
    HarnessConfig cfg;
    cfg.op_quad = {1e-15, 1e-15, 16, 1e-12};
    const ConvergenceReport rep =
        run_convergence(StatementId::prop4, corpus_entry("gaussian"),
                        OperatorParams{1, 0, {1, 2.0, 1.0}, 1.0}, {0.4, 0.2}, cfg);
    REQUIRE(rep.points.size() == 2);
    for (const auto& pt : rep.points) {
        CHECK_FALSE(pt.ok);
        CHECK_FALSE(pt.note.empty());
    }
}

TEST_CASE("CSV output is deterministic and carries the fixed columns") {
    const ConvergenceReport rep =
        run_convergence(StatementId::prop4, corpus_entry("gaussian"),
                        OperatorParams{1, 0, {1, 2.0, 1.0}, 1.0}, {0.4, 0.2, 0.1});
    const std::string csv = rep.to_csv();
    CHECK(csv == rep.to_csv());
    CHECK(csv.rfind("xi,error_lp,omega,bound,ratio,local_slope\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    // first data row has an empty local_slope column
    const size_t first_row = csv.find('\n') + 1;
    const size_t second_row = csv.find('\n', first_row);
    CHECK(csv[second_row - 1] == ',');
    const std::string js = rep.to_json();
    CHECK(js.find("\"statement\": \"prop4\"") != std::string::npos);
}

TEST_CASE("raw error column appears only when requested") {
    const ConvergenceReport rep =
        run_convergence(StatementId::prop4, corpus_entry("gaussian"),
                        OperatorParams{1, 0, {1, 2.0, 1.0}, 1.0}, {0.4, 0.2}, {}, true);
    CHECK(rep.to_csv().rfind("xi,error_lp,omega,bound,ratio,local_slope,raw_error_lp\n",
                             0) == 0);
    // for the propositions the raw error is the measured error itself
    for (const auto& pt : rep.points) CHECK(pt.raw_error == pt.error_lp);
}

TEST_CASE("parallel and serial sweeps agree bit for bit") {
    HarnessConfig serial, parallel;
    parallel.parallelism = 2;
    const OperatorParams op{1, 1, {1, 3.0, 1.0}, 1.0};
    const auto a = run_convergence(StatementId::thm2, corpus_entry("gaussian"), op,
                                   {0.4, 0.2, 0.1}, serial);
    const auto b = run_convergence(StatementId::thm2, corpus_entry("gaussian"), op,
                                   {0.4, 0.2, 0.1}, parallel);
    REQUIRE(a.points.size() == b.points.size());
    for (size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].error_lp == b.points[i].error_lp);
        CHECK(a.points[i].bound == b.points[i].bound);
    }
}

TEST_CASE("audit report aggregation") {
    pcops::harness::AuditReport rep;
    rep.checks.push_back({"good", 1e-12, 1e-9, true});
    CHECK(rep.all_pass());
    rep.checks.push_back({"bad", 1.0, 1e-9, false});
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.to_json().find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("audit suites pass on the built-in corpus") {
    const auto rep = audit_identities({}, "all");
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual ", c.residual, " tol ", c.tolerance);
        CHECK(c.pass);
    }
    CHECK(rep.all_pass());
    CHECK(rep.to_json().find("\"all_pass\": true") != std::string::npos);
    CHECK_THROWS_AS(audit_identities({}, "bogus"), std::invalid_argument);
}
