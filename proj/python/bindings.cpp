#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcops/harness.hpp"
#include "pcops/specfun.hpp"

namespace py = pybind11;

using pcops::bounds::BoundReport;
using pcops::bounds::StatementId;
using pcops::harness::ConvergenceReport;
using pcops::harness::HarnessConfig;
using pcops::kernel::KernelParams;
using pcops::operators::OperatorParams;
using pcops::quad::Integrand;
using pcops::quad::QuadratureSpec;
using pcops::smoothness::TestFunction;

namespace {

Integrand make_integrand(const std::function<double(double)>& f,
                         const std::vector<double>& singularities, double decay_hint,
                         double peak_scale) {
    Integrand g;
    g.eval = f;
    g.known_singularities = singularities;
    g.decay_exponent_hint = decay_hint;
    g.peak_scale = peak_scale;
    return g;
}

py::dict bound_report_dict(const BoundReport& rep) {
    py::dict d;
    d["statement"] = pcops::bounds::statement_name(rep.statement_id);
    d["constraint_ok"] = rep.constraint_ok;
    d["bound_value"] = rep.bound_value;
    d["modulus_value"] = rep.modulus_value;
    d["constants"] = rep.constant_values;
    return d;
}

py::dict convergence_report_dict(const ConvergenceReport& rep) {
    py::dict d;
    d["statement"] = pcops::bounds::statement_name(rep.statement_id);
    d["function"] = rep.function_name;
    py::list pts;
    for (const auto& pt : rep.points) {
        py::dict row;
        row["xi"] = pt.xi;
        row["error_lp"] = pt.error_lp;
        row["omega"] = pt.omega;
        row["bound"] = pt.bound;
        row["ratio"] = pt.ratio;
        row["ok"] = pt.ok;
        if (!pt.note.empty()) row["note"] = pt.note;
        if (rep.with_raw_error) row["raw_error_lp"] = pt.raw_error;
        pts.append(row);
    }
    d["points"] = pts;
    d["fitted_slope"] = rep.fitted_slope;
    d["constants"] = rep.constants;
    d["csv"] = rep.to_csv();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Poisson-Cauchy singular integral operators, moduli of smoothness and "
              "their Jackson-type error bounds";

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init([](double abs_tol, double rel_tol, int max_subdivisions,
                         double tail_tol) {
                 QuadratureSpec s{abs_tol, rel_tol, max_subdivisions, tail_tol};
                 s.validate();
                 return s;
             }),
             py::arg("abs_tol") = 1e-10, py::arg("rel_tol") = 1e-9,
             py::arg("max_subdivisions") = 2000, py::arg("tail_tol") = 1e-12)
        .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("max_subdivisions", &QuadratureSpec::max_subdivisions)
        .def_readwrite("tail_tol", &QuadratureSpec::tail_tol);

    py::class_<KernelParams>(m, "KernelParams")
        .def(py::init([](int alpha, double beta, double xi) {
                 KernelParams kp{alpha, beta, xi};
                 kp.validate();
                 return kp;
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("xi"))
        .def_readwrite("alpha", &KernelParams::alpha)
        .def_readwrite("beta", &KernelParams::beta)
        .def_readwrite("xi", &KernelParams::xi);

    py::class_<OperatorParams>(m, "OperatorParams")
        .def(py::init([](int r, int n, int alpha, double beta, double xi, double p) {
                 OperatorParams op{r, n, KernelParams{alpha, beta, xi}, p};
                 op.validate();
                 return op;
             }),
             py::arg("r"), py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("xi"),
             py::arg("p"))
        .def_readwrite("r", &OperatorParams::r)
        .def_readwrite("n", &OperatorParams::n)
        .def_readwrite("kp", &OperatorParams::kp)
        .def_readwrite("p", &OperatorParams::p);

    py::class_<TestFunction>(m, "TestFunction")
        .def_readonly("name", &TestFunction::name)
        .def_readonly("order", &TestFunction::order)
        .def_readonly("decay_exponent", &TestFunction::decay_exponent)
        .def("__call__", [](const TestFunction& f, double x) { return f(x); })
        .def("deriv", &TestFunction::deriv, py::arg("k"), py::arg("x"))
        .def("support_radius",
             [](const TestFunction& f, double eps) { return f.support_radius(eps); },
             py::arg("eps"))
        .def("in_lp",
             [](const TestFunction& f, int k, double p) { return f.lp_member(k, p); },
             py::arg("k"), py::arg("p"));

    // specfun
    m.def("log_gamma", &pcops::specfun::log_gamma, py::arg("x"));
    m.def("gamma_ratio",
          [](const std::vector<double>& numers, const std::vector<double>& denoms) {
              return pcops::specfun::gamma_ratio(numers, denoms);
          },
          py::arg("numers"), py::arg("denoms"));
    m.def("binomial", &pcops::specfun::binomial, py::arg("r"), py::arg("j"));

    // quad
    m.def("integrate_finite",
          [](const std::function<double(double)>& f, double a, double b,
             const QuadratureSpec& spec, const std::vector<double>& singularities,
             double decay_hint, double peak_scale) {
              return pcops::quad::integrate_finite(
                  make_integrand(f, singularities, decay_hint, peak_scale), a, b, spec);
          },
          py::arg("f"), py::arg("a"), py::arg("b"), py::arg("spec") = QuadratureSpec{},
          py::arg("singularities") = std::vector<double>{},
          py::arg("decay_hint") = std::numeric_limits<double>::quiet_NaN(),
          py::arg("peak_scale") = 0.0);
    m.def("integrate_halfline",
          [](const std::function<double(double)>& f, double decay_hint,
             const QuadratureSpec& spec, const std::vector<double>& singularities,
             double peak_scale) {
              return pcops::quad::integrate_halfline(
                  make_integrand(f, singularities, decay_hint, peak_scale), spec);
          },
          py::arg("f"), py::arg("decay_hint"), py::arg("spec") = QuadratureSpec{},
          py::arg("singularities") = std::vector<double>{}, py::arg("peak_scale") = 0.0);
    m.def("integrate_realline",
          [](const std::function<double(double)>& f, double decay_hint,
             const QuadratureSpec& spec, const std::vector<double>& singularities,
             double peak_scale) {
              return pcops::quad::integrate_realline(
                  make_integrand(f, singularities, decay_hint, peak_scale), spec);
          },
          py::arg("f"), py::arg("decay_hint"), py::arg("spec") = QuadratureSpec{},
          py::arg("singularities") = std::vector<double>{}, py::arg("peak_scale") = 0.0);
    m.def("lp_norm",
          [](const std::function<double(double)>& f, double p, double decay_hint,
             const QuadratureSpec& spec) {
              return pcops::quad::lp_norm(make_integrand(f, {}, decay_hint, 0.0), p, spec);
          },
          py::arg("f"), py::arg("p"), py::arg("decay_hint"),
          py::arg("spec") = QuadratureSpec{});

    // kernel
    m.def("kernel_value", &pcops::kernel::kernel_value, py::arg("t"), py::arg("kp"));
    m.def("normalization_W", &pcops::kernel::normalization_W, py::arg("kp"));
    m.def("moment", &pcops::kernel::moment, py::arg("k"), py::arg("kp"));
    m.def("halfline_moment", &pcops::kernel::halfline_moment, py::arg("m"),
          py::arg("alpha"), py::arg("beta"));

    // coefficients
    m.def("alphas", [](int r, int n) {
        const auto cs = pcops::operators::alphas(r, n);
        return py::make_tuple(cs.alphas, cs.deltas);
    }, py::arg("r"), py::arg("n"));
    m.def("binomial_identity_check", &pcops::operators::binomial_identity_check,
          py::arg("r"));

    // corpus
    m.def("corpus_names", [] {
        std::vector<std::string> names;
        for (const auto& e : pcops::harness::builtin_corpus()) names.push_back(e.name);
        return names;
    });
    m.def("corpus", [](const std::string& name) {
        return pcops::harness::corpus_entry(name).f;
    }, py::arg("name"));
    m.def("corpus_notes", [](const std::string& name) {
        return pcops::harness::corpus_entry(name).notes;
    }, py::arg("name"));
    m.def("constant_function", &pcops::harness::constant_function, py::arg("c"));

    // smoothness
    m.def("forward_difference", &pcops::smoothness::forward_difference, py::arg("f"),
          py::arg("deriv_order"), py::arg("r"), py::arg("t"), py::arg("x"));
    m.def("central_second_difference", &pcops::smoothness::central_second_difference,
          py::arg("f"), py::arg("deriv_order"), py::arg("y"), py::arg("x"));
    m.def("tau", &pcops::smoothness::tau, py::arg("f"), py::arg("r"), py::arg("n"),
          py::arg("w"), py::arg("x"));
    m.def("modulus_of_smoothness", &pcops::smoothness::modulus_of_smoothness,
          py::arg("f"), py::arg("deriv_order"), py::arg("r"), py::arg("h"), py::arg("p"),
          py::arg("spec") = QuadratureSpec{}, py::arg("refine_threshold") = 1e-3);

    // operators
    m.def("apply_M", &pcops::operators::apply_M, py::arg("f"), py::arg("op"), py::arg("x"),
          py::arg("spec") = QuadratureSpec{});
    m.def("operator_deviation", &pcops::operators::operator_deviation, py::arg("f"),
          py::arg("op"), py::arg("x"), py::arg("spec") = QuadratureSpec{});
    m.def("apply_M_symmetric", &pcops::operators::apply_M_symmetric, py::arg("f"),
          py::arg("kp"), py::arg("x"), py::arg("spec") = QuadratureSpec{});
    m.def("symmetric_deviation", &pcops::operators::symmetric_deviation, py::arg("f"),
          py::arg("kp"), py::arg("x"), py::arg("spec") = QuadratureSpec{});
    m.def("error_Delta", &pcops::operators::error_Delta, py::arg("f"), py::arg("op"),
          py::arg("x"), py::arg("spec") = QuadratureSpec{});
    m.def("remainder_Rn", &pcops::operators::remainder_Rn, py::arg("f"), py::arg("op"),
          py::arg("t"), py::arg("x"), py::arg("spec") = QuadratureSpec{});
    m.def("remainder_Rstar", &pcops::operators::remainder_Rstar, py::arg("f"),
          py::arg("op"), py::arg("x"), py::arg("spec") = QuadratureSpec{});
    m.def("error_K", &pcops::operators::error_K, py::arg("f"), py::arg("kp"), py::arg("n"),
          py::arg("x"), py::arg("spec") = QuadratureSpec{});
    m.def("error_K_remainder", &pcops::operators::error_K_remainder, py::arg("f"),
          py::arg("kp"), py::arg("n"), py::arg("x"), py::arg("spec") = QuadratureSpec{});

    // bounds
    m.def("tau_constant", &pcops::bounds::tau_constant, py::arg("p"), py::arg("n"),
          py::arg("r"), py::arg("alpha"), py::arg("beta"),
          py::arg("spec") = QuadratureSpec{});
    m.def("theta_constant", &pcops::bounds::theta_constant, py::arg("p"), py::arg("r"),
          py::arg("alpha"), py::arg("beta"), py::arg("spec") = QuadratureSpec{});
    m.def("rho_constant", &pcops::bounds::rho_constant, py::arg("p"), py::arg("alpha"),
          py::arg("beta"), py::arg("spec") = QuadratureSpec{});
    m.def("tau_tilde_constant", &pcops::bounds::tau_tilde_constant, py::arg("p"),
          py::arg("n"), py::arg("alpha"), py::arg("beta"),
          py::arg("spec") = QuadratureSpec{});
    m.def("prop2_integral", &pcops::bounds::prop2_integral, py::arg("r"), py::arg("alpha"),
          py::arg("beta"));
    m.def("bound_for",
          [](const std::string& statement, const OperatorParams& op, double omega,
             const QuadratureSpec& spec) {
              return bound_report_dict(pcops::bounds::bound_for(
                  pcops::bounds::statement_from_name(statement), op, omega, spec));
          },
          py::arg("statement"), py::arg("op"), py::arg("omega"),
          py::arg("spec") = QuadratureSpec{});

    // harness
    m.def("run_convergence",
          [](const std::string& statement, const std::string& function, int r, int n,
             int alpha, double beta, double p, const std::vector<double>& xi_grid,
             int parallelism, bool raw_error) {
              HarnessConfig cfg;
              cfg.parallelism = parallelism;
              OperatorParams base{r, n, KernelParams{alpha, beta, xi_grid.at(0)}, p};
              const auto rep = pcops::harness::run_convergence(
                  pcops::bounds::statement_from_name(statement),
                  pcops::harness::corpus_entry(function), base, xi_grid, cfg, raw_error);
              return convergence_report_dict(rep);
          },
          py::arg("statement"), py::arg("function"), py::arg("r"), py::arg("n"),
          py::arg("alpha"), py::arg("beta"), py::arg("p"), py::arg("xi_grid"),
          py::arg("parallelism") = 1, py::arg("raw_error") = false);
    m.def("audit_identities", [](const std::string& suite) {
        const auto rep = pcops::harness::audit_identities({}, suite);
        py::list checks;
        for (const auto& c : rep.checks) {
            py::dict d;
            d["name"] = c.name;
            d["residual"] = c.residual;
            d["tolerance"] = c.tolerance;
            d["pass"] = c.pass;
            checks.append(d);
        }
        py::dict d;
        d["checks"] = checks;
        d["all_pass"] = rep.all_pass();
        return d;
    }, py::arg("suite") = "all");
    m.def("fit_slope",
          [](const std::vector<double>& xi, const std::vector<double>& err) {
              return pcops::harness::fit_slope(xi, err);
          },
          py::arg("xi"), py::arg("err"));
    m.def("geometric_grid", &pcops::harness::geometric_grid, py::arg("start"),
          py::arg("stop"), py::arg("ratio"));
}
