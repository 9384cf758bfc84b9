#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcops/harness.hpp"

using nlohmann::json;
using pcops::bounds::StatementId;
using pcops::harness::HarnessConfig;

namespace {

HarnessConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    return HarnessConfig::from_json_file(path);
}

json params_json(const pcops::operators::OperatorParams& op) {
    return {{"r", op.r},
            {"n", op.n},
            {"alpha", op.kp.alpha},
            {"beta", op.kp.beta},
            {"xi", op.kp.xi},
            {"p", op.p}};
}

int run_verify(const std::string& suite, const std::string& config_path,
               const std::string& out_path) {
    const HarnessConfig cfg = load_config(config_path);
    const pcops::harness::AuditReport rep = pcops::harness::audit_identities(cfg, suite);
    for (const auto& c : rep.checks)
        std::printf("[%s] %-55s residual %.3e (tol %.1e)\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.residual, c.tolerance);
    std::printf("%zu checks, %s\n", rep.checks.size(),
                rep.all_pass() ? "all passed" : "FAILURES present");
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << rep.to_json() << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int run_bound(const std::string& statement, double p, int n, int r, int alpha, double beta,
              double xi) {
    const StatementId id = pcops::bounds::statement_from_name(statement);
    pcops::operators::OperatorParams op;
    op.r = r;
    op.n = n;
    op.p = p;
    op.kp = {alpha, beta, xi};
    const pcops::bounds::BoundReport rep = pcops::bounds::bound_for(id, op, 1.0);
    json j;
    j["statement"] = statement;
    j["params"] = params_json(op);
    j["constraint_ok"] = rep.constraint_ok;
    j["constants"] = rep.constant_values;
    if (rep.constraint_ok) j["prefactor"] = rep.prefactor();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_converge(const std::string& statement, const std::string& function, double p, int n,
                 int r, int alpha, double beta, double xi_start, double xi_stop,
                 double xi_ratio, const std::string& out_csv, const std::string& out_json,
                 bool raw_error, const std::string& config_path) {
    const HarnessConfig cfg = load_config(config_path);
    const StatementId id = pcops::bounds::statement_from_name(statement);
    const pcops::harness::CorpusEntry& entry = pcops::harness::corpus_entry(function);
    pcops::operators::OperatorParams base;
    base.r = r;
    base.n = n;
    base.p = p;
    base.kp = {alpha, beta, xi_start};
    const std::vector<double> grid =
        pcops::harness::geometric_grid(xi_start, xi_stop, xi_ratio);
    const pcops::harness::ConvergenceReport rep =
        pcops::harness::run_convergence(id, entry, base, grid, cfg, raw_error);

    std::ofstream csv(out_csv);
    if (!csv) {
        std::cerr << "cannot open output file: " << out_csv << "\n";
        return 2;
    }
    csv << rep.to_csv();
    if (!out_json.empty()) {
        std::ofstream jf(out_json);
        jf << rep.to_json() << "\n";
    }

    int all_ok = 1;
    for (const auto& pt : rep.points) {
        std::printf("xi %-10.6g error %.6e bound %.6e ratio %.4f %s\n", pt.xi, pt.error_lp,
                    pt.bound, pt.ratio, pt.ok ? "" : pt.note.c_str());
        if (!pt.ok) all_ok = 0;
    }
    std::printf("fitted slope (3 smallest xi): %.4f\n", rep.fitted_slope);
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poisson-Cauchy singular operator toolkit"};
    app.require_subcommand(1);

    std::string suite = "all", config_path, out_path;
    CLI::App* verify = app.add_subcommand("verify", "run the identity audit suites");
    verify->add_option("--suite", suite, "coeffs|kernel|identities|all")
        ->check(CLI::IsMember({"coeffs", "kernel", "identities", "all"}));
    verify->add_option("--config", config_path, "JSON config file");
    verify->add_option("--out", out_path, "write the JSON report here");

    std::string statement, function;
    double p = 2.0, beta = 4.0, xi = 1.0, xi_start = 0.4, xi_stop = 0.05, xi_ratio = 0.5;
    int n = 1, r = 1, alpha = 1;
    CLI::App* bound = app.add_subcommand("bound", "evaluate one statement's constants");
    bound->add_option("--statement", statement)->required();
    bound->add_option("--p", p);
    bound->add_option("--n", n);
    bound->add_option("--r", r);
    bound->add_option("--alpha", alpha);
    bound->add_option("--beta", beta)->required();
    bound->add_option("--xi", xi);

    std::string out_csv, out_json, conv_config;
    bool raw_error = false;
    CLI::App* converge = app.add_subcommand("converge", "sweep a xi grid and compare "
                                                        "errors against the bound");
    converge->add_option("--statement", statement)->required();
    converge->add_option("--function", function)->required();
    converge->add_option("--p", p);
    converge->add_option("--n", n);
    converge->add_option("--r", r);
    converge->add_option("--alpha", alpha);
    converge->add_option("--beta", beta)->required();
    converge->add_option("--xi-start", xi_start);
    converge->add_option("--xi-stop", xi_stop);
    converge->add_option("--xi-ratio", xi_ratio);
    converge->add_option("--out", out_csv, "CSV output path")->required();
    converge->add_option("--json", out_json, "JSON report path");
    converge->add_flag("--raw-error", raw_error, "also report ||M f - f||_p");
    converge->add_option("--config", conv_config, "JSON config file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return run_verify(suite, config_path, out_path);
        if (bound->parsed()) return run_bound(statement, p, n, r, alpha, beta, xi);
        if (converge->parsed())
            return run_converge(statement, function, p, n, r, alpha, beta, xi_start,
                                xi_stop, xi_ratio, out_csv, out_json, raw_error,
                                conv_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
