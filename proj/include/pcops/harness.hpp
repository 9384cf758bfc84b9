#pragma once

#include <span>
#include <string>
#include <vector>

#include "pcops/bounds.hpp"
#include "pcops/corpus.hpp"

namespace pcops::harness {

using bounds::StatementId;
using operators::OperatorParams;

// Runtime knobs. op_quad drives the operator/kernel integrals, norm_quad the
// outer Lp norms in x (relative-tolerance dominated so small errors keep
// relative accuracy).
struct HarnessConfig {
    // op_quad's absolute floor sits well below any error value the sweeps
    // measure; otherwise inner noise stalls the outer norm refinement.
    quad::QuadratureSpec op_quad{1e-13, 1e-9, 2000, 1e-12};
    quad::QuadratureSpec norm_quad{1e-16, 1e-6, 2000, 1e-12};
    double modulus_refine_threshold = 1e-3;
    double omega_safety = 1.01; // upward factor where omega sits on the larger side
    double ratio_slack = 1.01;
    int parallelism = 1;

    static HarnessConfig from_json_file(const std::string& path);
    static HarnessConfig from_json_text(const std::string& text);
};

struct ConvergencePoint {
    double xi = 0.0;
    double error_lp = 0.0;
    double omega = 0.0;     // safety-scaled modulus entering the bound
    double bound = 0.0;
    double ratio = 0.0;     // error_lp / bound
    double raw_error = 0.0; // ||M f - f||_p, only when requested
    bool ok = true;
    std::string note;       // failure diagnostic when !ok
};

struct ConvergenceReport {
    StatementId statement_id{};
    std::string function_name;
    OperatorParams base{};           // xi field unused
    std::vector<ConvergencePoint> points; // xi strictly decreasing
    double fitted_slope = 0.0;       // log-log LS slope over the 3 smallest xi
    std::map<std::string, double> constants;
    bool with_raw_error = false;

    std::string to_csv() const;  // columns: xi,error_lp,omega,bound,ratio,local_slope
    std::string to_json() const;
};

/// Measured Lp error, bound and ratio for every xi in the grid. The error
/// function is error_Delta (thm1/thm2), error_K (thm3/thm4) or the plain
/// operator deviation (propositions). Throws std::domain_error when the
/// statement's hypotheses fail for these parameters; per-xi quadrature
/// failures are recorded on the point and the report is still produced.
ConvergenceReport run_convergence(StatementId id, const CorpusEntry& entry,
                                  OperatorParams base, std::vector<double> xi_grid,
                                  const HarnessConfig& cfg = {},
                                  bool with_raw_error = false);

struct AuditCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    bool all_pass() const;
    std::string to_json() const;
};

/// Runs the identity checks (coefficient sums, kernel normalization and
/// moments, the dual error representations, operator equalities) on the
/// built-in corpus. suite is one of "coeffs", "kernel", "identities", "all".
AuditReport audit_identities(const HarnessConfig& cfg = {}, const std::string& suite = "all");

/// Least-squares slope of ln(err) against ln(xi). Needs >= 3 points, all
/// positive (std::domain_error otherwise).
double fit_slope(std::span<const double> xi, std::span<const double> err);

/// Geometric grid from start down to stop (inclusive within rounding slack)
/// with successive ratio `ratio` in (0, 1).
std::vector<double> geometric_grid(double start, double stop, double ratio);

} // namespace pcops::harness
