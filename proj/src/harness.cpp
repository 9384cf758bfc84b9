#include "pcops/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace pcops::harness {

using bounds::BoundReport;
using nlohmann::json;
using operators::OperatorParams;
using quad::Integrand;
using smoothness::TestFunction;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void apply_quad_json(quad::QuadratureSpec& spec, const json& j) {
    if (j.contains("abs_tol")) spec.abs_tol = j["abs_tol"].get<double>();
    if (j.contains("rel_tol")) spec.rel_tol = j["rel_tol"].get<double>();
    if (j.contains("max_subdivisions")) spec.max_subdivisions = j["max_subdivisions"].get<int>();
    if (j.contains("tail_tol")) spec.tail_tol = j["tail_tol"].get<double>();
    spec.validate();
}

// Derivative order whose modulus the statement's right-hand side uses, and
// the difference order r of that modulus.
struct ModulusShape {
    int deriv_order;
    int diff_order;
};

ModulusShape modulus_shape(StatementId id, const OperatorParams& op) {
    switch (id) {
        case StatementId::thm1:
        case StatementId::thm2: return {op.n, op.r};
        case StatementId::prop1:
        case StatementId::prop2: return {0, op.r};
        case StatementId::thm3:
        case StatementId::thm4: return {op.n, 2};
        case StatementId::prop3:
        case StatementId::prop4: return {0, 2};
    }
    return {0, 1};
}

bool symmetric_family(StatementId id) {
    return id == StatementId::thm3 || id == StatementId::thm4 ||
           id == StatementId::prop3 || id == StatementId::prop4;
}

bool corrected_family(StatementId id) {
    return id == StatementId::thm1 || id == StatementId::thm2 ||
           id == StatementId::thm3 || id == StatementId::thm4;
}

double kernel_tail_radius(const kernel::KernelParams& kp, double tol) {
    const double d = 2.0 * kp.alpha * kp.beta;
    const double w = kernel::normalization_W(kp);
    const double lr = (std::log(w) - std::log(tol * (d - 1.0))) / (d - 1.0);
    return std::max(8.0 * kp.xi, std::exp(std::min(lr, std::log(1e15))));
}

// Lp norm in x of a pointwise error function, truncated at the combined
// support/kernel radius.
double error_lp_norm(const std::function<double(double)>& err_fn, double p, double radius,
                     const quad::QuadratureSpec& spec) {
    Integrand g;
    g.eval = [&](double x) { return std::pow(std::abs(err_fn(x)), p); };
    const double ip = quad::integrate_finite(g, -radius, radius, spec);
    return std::pow(std::max(ip, 0.0), 1.0 / p);
}

} // namespace

HarnessConfig HarnessConfig::from_json_text(const std::string& text) {
    HarnessConfig cfg;
    const json j = json::parse(text);
    if (j.contains("quad")) apply_quad_json(cfg.op_quad, j["quad"]);
    if (j.contains("norm_quad")) apply_quad_json(cfg.norm_quad, j["norm_quad"]);
    if (j.contains("modulus_refine_threshold"))
        cfg.modulus_refine_threshold = j["modulus_refine_threshold"].get<double>();
    if (j.contains("omega_safety")) cfg.omega_safety = j["omega_safety"].get<double>();
    if (j.contains("ratio_slack")) cfg.ratio_slack = j["ratio_slack"].get<double>();
    if (j.contains("parallelism")) cfg.parallelism = j["parallelism"].get<int>();
    if (cfg.parallelism < 1) throw std::invalid_argument("config: parallelism must be >= 1");
    if (!(cfg.omega_safety >= 1.0))
        throw std::invalid_argument("config: omega_safety must be >= 1");
    return cfg;
}

HarnessConfig HarnessConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::vector<double> geometric_grid(double start, double stop, double ratio) {
    if (!(start > 0.0 && stop > 0.0 && start >= stop))
        throw std::domain_error("geometric_grid: require start >= stop > 0");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::domain_error("geometric_grid: require 0 < ratio < 1");
    std::vector<double> grid;
    for (double v = start; v >= stop * (1.0 - 1e-9); v *= ratio) grid.push_back(v);
    return grid;
}

double fit_slope(std::span<const double> xi, std::span<const double> err) {
    if (xi.size() != err.size() || xi.size() < 3)
        throw std::domain_error("fit_slope: need >= 3 matched points");
    double mx = 0.0, my = 0.0;
    const size_t n = xi.size();
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(xi[i] > 0.0) || !(err[i] > 0.0))
            throw std::domain_error("fit_slope: values must be positive");
        lx[i] = std::log(xi[i]);
        ly[i] = std::log(err[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

ConvergenceReport run_convergence(StatementId id, const CorpusEntry& entry,
                                  OperatorParams base, std::vector<double> xi_grid,
                                  const HarnessConfig& cfg, bool with_raw_error) {
    if (xi_grid.empty()) throw std::domain_error("run_convergence: empty xi grid");
    for (size_t i = 0; i + 1 < xi_grid.size(); ++i)
        if (!(xi_grid[i] > xi_grid[i + 1]))
            throw std::domain_error("run_convergence: xi grid must be strictly decreasing");
    if (!(xi_grid.back() > 0.0))
        throw std::domain_error("run_convergence: xi values must be positive");

    // The n = 0 statements use the pure signed-binomial coefficient scheme;
    // the symmetric-operator statements do not involve r at all.
    if (!corrected_family(id)) base.n = 0;
    if (symmetric_family(id)) base.r = 1;

    OperatorParams probe = base;
    probe.kp.xi = xi_grid.front();
    probe.validate();
    if (!bounds::constraint_holds(id, probe))
        throw std::domain_error(std::string("run_convergence: hypotheses of ") +
                                bounds::statement_name(id) +
                                " fail for these parameters (beta threshold " +
                                std::to_string(bounds::beta_threshold(id, probe)) + ")");
    const ModulusShape ms = modulus_shape(id, probe);
    if (ms.deriv_order > entry.f.order)
        throw std::domain_error("run_convergence: corpus entry lacks derivative order " +
                                std::to_string(ms.deriv_order));
    if (!entry.f.lp_member(ms.deriv_order, probe.p))
        throw std::domain_error("run_convergence: corpus entry does not satisfy the "
                                "L_p membership hypothesis");

    ConvergenceReport rep;
    rep.statement_id = id;
    rep.function_name = entry.name;
    rep.base = base;
    rep.with_raw_error = with_raw_error;
    rep.points.resize(xi_grid.size());

    const double xi_max = xi_grid.front();
    const double support = entry.f.support_radius(cfg.norm_quad.tail_tol);

    auto eval_point = [&](size_t i) {
        ConvergencePoint pt;
        pt.xi = xi_grid[i];
        OperatorParams op = base;
        op.kp.xi = pt.xi;
        try {
            const double omega_raw =
                smoothness::modulus_of_smoothness(entry.f, ms.deriv_order, ms.diff_order,
                                                  pt.xi, op.p, cfg.norm_quad,
                                                  cfg.modulus_refine_threshold);
            pt.omega = omega_raw * cfg.omega_safety;
            const BoundReport br = bounds::bound_for(id, op, pt.omega, cfg.op_quad);
            pt.bound = br.bound_value;

            const double radius =
                support + ms.diff_order * xi_max +
                kernel_tail_radius(op.kp, cfg.norm_quad.tail_tol);
            std::function<double(double)> err_fn;
            switch (id) {
                case StatementId::thm1:
                case StatementId::thm2:
                    err_fn = [&, op](double x) {
                        return operators::error_Delta(entry.f, op, x, cfg.op_quad);
                    };
                    break;
                case StatementId::thm3:
                case StatementId::thm4:
                    err_fn = [&, op](double x) {
                        return operators::error_K(entry.f, op.kp, op.n, x, cfg.op_quad);
                    };
                    break;
                case StatementId::prop1:
                case StatementId::prop2:
                    err_fn = [&, op](double x) {
                        return operators::operator_deviation(entry.f, op, x, cfg.op_quad);
                    };
                    break;
                case StatementId::prop3:
                case StatementId::prop4:
                    err_fn = [&, op](double x) {
                        return operators::symmetric_deviation(entry.f, op.kp, x, cfg.op_quad);
                    };
                    break;
            }
            pt.error_lp = error_lp_norm(err_fn, op.p, radius, cfg.norm_quad);
            pt.ratio = pt.error_lp / pt.bound;

            if (with_raw_error) {
                if (!corrected_family(id)) {
                    pt.raw_error = pt.error_lp;
                } else if (symmetric_family(id)) {
                    auto raw = [&, op](double x) {
                        return operators::symmetric_deviation(entry.f, op.kp, x, cfg.op_quad);
                    };
                    pt.raw_error = error_lp_norm(raw, op.p, radius, cfg.norm_quad);
                } else {
                    auto raw = [&, op](double x) {
                        return operators::operator_deviation(entry.f, op, x, cfg.op_quad);
                    };
                    pt.raw_error = error_lp_norm(raw, op.p, radius, cfg.norm_quad);
                }
            }
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.note = e.what();
        }
        return pt;
    };

    const size_t n_workers =
        std::min<size_t>(static_cast<size_t>(std::max(cfg.parallelism, 1)), xi_grid.size());
    if (n_workers > 1) {
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(n_workers);
        for (size_t w = 0; w < n_workers; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= xi_grid.size()) return;
                    rep.points[i] = eval_point(i);
                }
            });
        for (auto& t : workers) t.join();
    } else {
        for (size_t i = 0; i < xi_grid.size(); ++i) rep.points[i] = eval_point(i);
    }

    OperatorParams op0 = base;
    op0.kp.xi = xi_grid.front();
    try {
        const BoundReport br = bounds::bound_for(id, op0, 1.0, cfg.op_quad);
        rep.constants = br.constant_values;
    } catch (const std::exception&) {
        // constants unavailable; points carry their own diagnostics
    }

    rep.fitted_slope = kNaN;
    if (rep.points.size() >= 3) {
        std::vector<double> xs, es;
        for (size_t i = rep.points.size() - 3; i < rep.points.size(); ++i) {
            if (rep.points[i].ok && rep.points[i].error_lp > 0.0) {
                xs.push_back(rep.points[i].xi);
                es.push_back(rep.points[i].error_lp);
            }
        }
        if (xs.size() == 3) rep.fitted_slope = fit_slope(xs, es);
    }
    return rep;
}

std::string ConvergenceReport::to_csv() const {
    std::string out = "xi,error_lp,omega,bound,ratio,local_slope";
    if (with_raw_error) out += ",raw_error_lp";
    out += "\n";
    for (size_t i = 0; i < points.size(); ++i) {
        const ConvergencePoint& pt = points[i];
        out += fmt12(pt.xi) + "," + fmt12(pt.error_lp) + "," + fmt12(pt.omega) + "," +
               fmt12(pt.bound) + "," + fmt12(pt.ratio) + ",";
        if (i > 0 && points[i - 1].error_lp > 0.0 && pt.error_lp > 0.0) {
            const double slope = std::log(pt.error_lp / points[i - 1].error_lp) /
                                 std::log(pt.xi / points[i - 1].xi);
            out += fmt12(slope);
        }
        if (with_raw_error) out += "," + fmt12(pt.raw_error);
        out += "\n";
    }
    return out;
}

std::string ConvergenceReport::to_json() const {
    json j;
    j["statement"] = bounds::statement_name(statement_id);
    j["function"] = function_name;
    j["params"] = {{"r", base.r},       {"n", base.n},          {"alpha", base.kp.alpha},
                   {"beta", base.kp.beta}, {"p", base.p}};
    j["constants"] = constants;
    j["fitted_slope"] = fitted_slope;
    json pts = json::array();
    for (const ConvergencePoint& pt : points) {
        json row = {{"xi", pt.xi},       {"error_lp", pt.error_lp}, {"omega", pt.omega},
                    {"bound", pt.bound}, {"ratio", pt.ratio},       {"ok", pt.ok}};
        if (!pt.note.empty()) row["note"] = pt.note;
        if (with_raw_error) row["raw_error_lp"] = pt.raw_error;
        pts.push_back(row);
    }
    j["points"] = pts;
    return j.dump(2);
}

bool AuditReport::all_pass() const {
    for (const AuditCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string AuditReport::to_json() const {
    json arr = json::array();
    for (const AuditCheck& c : checks)
        arr.push_back({{"name", c.name},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    json j;
    j["checks"] = arr;
    j["all_pass"] = all_pass();
    return j.dump(2);
}

namespace {

void audit_coeffs(AuditReport& rep) {
    auto add = [&](const std::string& name, double residual, double tol) {
        rep.checks.push_back({name, residual, tol, residual <= tol});
    };
    for (int r = 1; r <= 6; ++r)
        for (int n = 0; n <= 4; ++n) {
            const operators::CoefficientSet cs = operators::alphas(r, n);
            double sum = 0.0;
            for (double a : cs.alphas) sum += a;
            add("coefficient_sum r=" + std::to_string(r) + " n=" + std::to_string(n),
                std::abs(sum - 1.0), 1e-12);
        }
    for (int r = 1; r <= 10; ++r)
        add("signed_binomial_identity r=" + std::to_string(r),
            operators::binomial_identity_check(r) ? 0.0 : 1.0, 0.5);

    const operators::CoefficientSet c21 = operators::alphas(2, 1);
    add("alphas r=2 n=1 values",
        std::abs(c21.alphas[0] - 2.5) + std::abs(c21.alphas[1] + 2.0) +
            std::abs(c21.alphas[2] - 0.5) + std::abs(c21.delta(1) + 1.0),
        1e-12);
    const operators::CoefficientSet c30 = operators::alphas(3, 0);
    add("alphas r=3 n=0 values",
        std::abs(c30.alphas[0]) + std::abs(c30.alphas[1] - 3.0) +
            std::abs(c30.alphas[2] + 3.0) + std::abs(c30.alphas[3] - 1.0),
        1e-12);
}

void audit_kernel(AuditReport& rep, const HarnessConfig& cfg) {
    auto add = [&](const std::string& name, double residual, double tol) {
        rep.checks.push_back({name, residual, tol, residual <= tol});
    };
    for (int alpha : {1, 2, 3})
        for (double beta : {1.0, 2.0, 4.0})
            for (double xi : {0.1, 1.0, 10.0}) {
                kernel::KernelParams kp{alpha, beta, xi};
                Integrand g;
                g.eval = [kp](double t) { return kernel::kernel_value(t, kp); };
                g.decay_exponent_hint = 2.0 * alpha * beta;
                g.peak_scale = xi;
                const double integral = quad::integrate_realline(g, cfg.op_quad);
                add("kernel_normalization a=" + std::to_string(alpha) +
                        " b=" + fmt12(beta) + " xi=" + fmt12(xi),
                    std::abs(kernel::normalization_W(kp) * integral - 1.0), 1e-8);
            }

    const kernel::KernelParams samples[] = {{1, 2.0, 1.0}, {2, 1.5, 0.5}, {1, 4.0, 2.0}};
    for (const auto& kp : samples) {
        for (int k : {0, 2, 4}) {
            if (!(kp.beta > (k + 1.0) / (2.0 * kp.alpha))) continue;
            Integrand g;
            g.eval = [kp, k](double t) {
                return std::pow(t, k) * kernel::kernel_value(t, kp);
            };
            g.decay_exponent_hint = 2.0 * kp.alpha * kp.beta - k;
            g.peak_scale = kp.xi;
            const double via_quad = quad::integrate_realline(g, cfg.op_quad);
            const double closed = kernel::moment(k, kp);
            add("moment_closed_form k=" + std::to_string(k) + " a=" +
                    std::to_string(kp.alpha) + " b=" + fmt12(kp.beta) + " xi=" +
                    fmt12(kp.xi),
                std::abs(via_quad - closed) / closed, 1e-7);
        }
        for (int k : {1, 3}) {
            if (!(2.0 * kp.alpha * kp.beta - k > 1.0)) continue;
            Integrand g;
            g.eval = [kp, k](double t) {
                return std::pow(t, k) * kernel::kernel_value(t, kp);
            };
            g.decay_exponent_hint = 2.0 * kp.alpha * kp.beta - k;
            g.peak_scale = kp.xi;
            add("moment_odd_vanishes k=" + std::to_string(k) + " a=" +
                    std::to_string(kp.alpha) + " b=" + fmt12(kp.beta) + " xi=" +
                    fmt12(kp.xi),
                std::abs(quad::integrate_realline(g, cfg.op_quad)), 1e-9);
        }
    }

    for (double xi : {0.25, 4.0}) {
        kernel::KernelParams kp{1, 3.0, xi};
        kernel::KernelParams unit{1, 3.0, 1.0};
        for (int k : {0, 2}) {
            const double scaled = kernel::moment(k, kp);
            const double predicted =
                std::pow(xi, k + 1.0 - 2.0 * kp.alpha * kp.beta) * kernel::moment(k, unit);
            add("moment_xi_scaling k=" + std::to_string(k) + " xi=" + fmt12(xi),
                std::abs(scaled - predicted) / std::abs(predicted), 1e-10);
        }
    }

    const struct { int m, alpha; double beta; } hm[] = {{1, 1, 1.0}, {2, 1, 2.0},
                                                        {3, 1, 2.0}, {2, 2, 1.5}};
    for (const auto& c : hm) {
        Integrand g;
        g.eval = [c](double t) {
            kernel::KernelParams kp{c.alpha, c.beta, 1.0};
            return std::pow(t, c.m - 1.0) * kernel::kernel_value(t, kp);
        };
        g.decay_exponent_hint = 2.0 * c.alpha * c.beta - c.m + 1.0;
        const double via_quad = quad::integrate_halfline(g, cfg.op_quad);
        const double closed = kernel::halfline_moment(c.m, c.alpha, c.beta);
        add("halfline_moment m=" + std::to_string(c.m) + " a=" + std::to_string(c.alpha) +
                " b=" + fmt12(c.beta),
            std::abs(via_quad - closed) / closed, 1e-7);
    }
}

void audit_operator_identities(AuditReport& rep, const HarnessConfig& cfg) {
    auto add = [&](const std::string& name, double residual, double tol) {
        rep.checks.push_back({name, residual, tol, residual <= tol});
    };
    const TestFunction& gauss = corpus_entry("gaussian").f;
    const TestFunction& bump = corpus_entry("cauchy_bump").f;
    const double xs[] = {-1.3, -0.4, 0.0, 0.7, 1.9};

    // Constant reproduction, text before the deviation identity.
    for (double c : {-3.0, 0.0, 1.0, 7.0}) {
        const TestFunction cf = constant_function(c);
        OperatorParams op{2, 1, {1, 3.0, 0.5}, 1.0};
        const double got = operators::apply_M(cf, op, 0.3, cfg.op_quad);
        add("constant_reproduction c=" + fmt12(c), std::abs(got - c) / std::max(1.0, std::abs(c)),
            1e-7);
    }

    // Deviation form equals M f - f directly (the rearranged identity).
    {
        OperatorParams op{2, 2, {1, 4.0, 0.4}, 2.0};
        double worst = 0.0;
        for (double x : xs) {
            const double direct = operators::apply_M(gauss, op, x, cfg.op_quad) -
                                  gauss.derivatives(0, x);
            const double dev = operators::operator_deviation(gauss, op, x, cfg.op_quad);
            worst = std::max(worst, std::abs(direct - dev));
        }
        add("deviation_matches_direct_difference gaussian", worst, 1e-8);
    }

    // tau equals the forward difference of f^(n).
    {
        double worst = 0.0;
        const struct { int r, n; double w, x; } cases[] = {
            {2, 1, 0.3, 0.5}, {1, 2, -0.4, 1.1}, {3, 2, 0.15, -0.6}, {2, 3, 0.05, 0.0}};
        for (const auto& c : cases)
            for (const TestFunction* f : {&gauss, &bump}) {
                const double a = smoothness::tau(*f, c.r, c.n, c.w, c.x);
                const double b = smoothness::forward_difference(*f, c.n, c.r, c.w, c.x);
                worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
            }
        add("tau_equals_forward_difference", worst, 1e-11);
    }

    // Taylor expansion with integral remainder.
    {
        OperatorParams op{2, 2, {1, 8.0, 0.5}, 2.0};
        const double t = 0.3, x = 0.1;
        const operators::CoefficientSet cs = operators::alphas(op.r, op.n);
        double lhs = 0.0;
        for (int j = 0; j <= op.r; ++j)
            lhs += cs.alphas[static_cast<size_t>(j)] *
                   (gauss.derivatives(0, x + j * t) - gauss.derivatives(0, x));
        double rhs = 0.0, factk = 1.0;
        for (int k = 1; k <= op.n; ++k) {
            factk *= k;
            rhs += gauss.deriv(k, x) / factk * cs.delta(k) * std::pow(t, k);
        }
        rhs += operators::remainder_Rn(gauss, op, t, x, cfg.op_quad);
        add("taylor_remainder_identity gaussian", std::abs(lhs - rhs), 1e-9);
    }

    // Dual error representation.
    {
        OperatorParams op{2, 2, {1, 8.0, 0.5}, 2.0};
        double worst = 0.0;
        for (double x : {0.0, 0.7}) {
            const double d = operators::error_Delta(gauss, op, x, cfg.op_quad);
            const double rs = operators::remainder_Rstar(gauss, op, x, cfg.op_quad);
            worst = std::max(worst, std::abs(d - rs));
        }
        add("corrected_error_dual_representation gaussian", worst, 1e-6);
    }

    // M_{1,xi} = M_xi.
    {
        kernel::KernelParams kp{1, 3.0, 0.5};
        OperatorParams op{1, 1, kp, 1.0};
        double worst = 0.0;
        quad::QuadratureSpec tight = cfg.op_quad;
        tight.abs_tol = std::min(tight.abs_tol, 1e-12);
        tight.rel_tol = std::min(tight.rel_tol, 1e-11);
        for (double x : xs)
            worst = std::max(worst,
                             std::abs(operators::apply_M(gauss, op, x, tight) -
                                      operators::apply_M_symmetric(gauss, kp, x, tight)));
        add("m1_equals_symmetric_operator gaussian", worst, 1e-9);
    }

    // Central second difference vs shifted forward difference.
    {
        double worst = 0.0;
        for (double t : {0.2, 0.7})
            for (double x : xs)
                worst = std::max(
                    worst, std::abs(smoothness::central_second_difference(gauss, 2, t, x) -
                                    smoothness::forward_difference(gauss, 2, 2, t, x - t)));
        add("central_equals_shifted_forward gaussian", worst, 1e-12);
    }

    // L1 norm of the shifted second difference below the second modulus.
    {
        double worst = 0.0;
        for (double t : {0.1, 0.3}) {
            const double radius = gauss.support_radius(cfg.norm_quad.tail_tol) + 2.0 * t;
            Integrand g;
            g.eval = [&](double x) {
                return std::abs(smoothness::forward_difference(gauss, 2, 2, t, x - t));
            };
            const double lhs = quad::integrate_finite(g, -radius, radius, cfg.norm_quad);
            const double om = smoothness::modulus_of_smoothness(
                gauss, 2, 2, t, 1.0, cfg.norm_quad, cfg.modulus_refine_threshold);
            worst = std::max(worst, lhs / om - 1.0);
        }
        add("second_difference_below_modulus", std::max(worst, 0.0), 0.01);
    }

    // Half-line central-difference form of the symmetric deviation.
    {
        kernel::KernelParams kp{1, 6.0, 0.5};
        double worst = 0.0;
        for (double x : {0.2, -0.8}) {
            const double direct = operators::apply_M_symmetric(gauss, kp, x, cfg.op_quad) -
                                  gauss.derivatives(0, x);
            const double via_halfline =
                operators::symmetric_deviation(gauss, kp, x, cfg.op_quad);
            worst = std::max(worst, std::abs(direct - via_halfline));
        }
        add("symmetric_deviation_halfline_form gaussian", worst, 1e-8);
    }

    // Positivity of the symmetric operator on non-negative entries.
    {
        kernel::KernelParams kp{1, 2.0, 0.3};
        double worst = 0.0;
        for (const char* name : {"gaussian", "cauchy_bump", "rational3"}) {
            const TestFunction& f = corpus_entry(name).f;
            for (double x : xs)
                worst = std::min(worst, operators::apply_M_symmetric(f, kp, x, cfg.op_quad));
        }
        add("msym_positivity", std::max(-worst, 0.0), 1e-12);
    }
}

} // namespace

AuditReport audit_identities(const HarnessConfig& cfg, const std::string& suite) {
    AuditReport rep;
    const bool all = suite == "all";
    if (!all && suite != "coeffs" && suite != "kernel" && suite != "identities")
        throw std::invalid_argument("audit_identities: unknown suite '" + suite + "'");
    if (all || suite == "coeffs") audit_coeffs(rep);
    if (all || suite == "kernel") audit_kernel(rep, cfg);
    if (all || suite == "identities") audit_operator_identities(rep, cfg);
    return rep;
}

} // namespace pcops::harness
