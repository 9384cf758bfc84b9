#pragma once

#include <map>
#include <string>

#include "pcops/operators.hpp"

namespace pcops::bounds {

using operators::OperatorParams;
using quad::QuadratureSpec;

enum class StatementId { thm1, thm2, prop1, prop2, thm3, thm4, prop3, prop4 };

const char* statement_name(StatementId id);
StatementId statement_from_name(const std::string& name); // throws std::invalid_argument

/// Strict hypothesis check of the statement's beta constraint (and the
/// p / n shape requirements) for the given parameters.
bool constraint_holds(StatementId id, const OperatorParams& op);

/// The beta threshold of the statement's hypothesis (bound holds for
/// beta strictly above it).
double beta_threshold(StatementId id, const OperatorParams& op);

// One evaluated theorem/proposition right-hand side. bound_value is
// prefactor * omega where omega is the caller-supplied modulus value;
// NaN when the hypothesis fails.
struct BoundReport {
    StatementId statement_id{};
    OperatorParams params{};
    bool constraint_ok = false;
    std::map<std::string, double> constant_values;
    double bound_value = 0.0;
    double modulus_value = 0.0;

    double prefactor() const; // bound_value with omega factored out
};

// Quadrature-defined constants. Each throws std::domain_error when the
// hypothesis that makes it finite is violated. Values are cached (they are
// xi-free); the cache is safe for concurrent lookup.
double tau_constant(double p, int n, int r, int alpha, double beta,
                    const QuadratureSpec& spec = {});
double theta_constant(double p, int r, int alpha, double beta,
                      const QuadratureSpec& spec = {});
double rho_constant(double p, int alpha, double beta,
                    const QuadratureSpec& spec = {});
double tau_tilde_constant(double p, int n, int alpha, double beta,
                          const QuadratureSpec& spec = {});

/// int_0^inf (1+t)^r / (t^(2a)+1)^b dt via the exact binomial expansion into
/// half-line moments. Requires beta > (r+1)/(2 alpha).
double prop2_integral(int r, int alpha, double beta);

// Right-hand sides. omega is the relevant modulus of smoothness value,
// computed by the caller:
//   thm1/thm2: omega_r(f^(n), xi)_p      (p = 1 for thm2)
//   prop1/prop2: omega_r(f, xi)_p        (p = 1 for prop2)
//   thm3/thm4: omega_2(f^(n), xi)_p      (p = 1 for thm4)
//   prop3/prop4: omega_2(f, xi)_p        (p = 1 for prop4)
BoundReport thm1_bound(const OperatorParams& op, double omega, const QuadratureSpec& spec = {});
BoundReport thm2_bound(const OperatorParams& op, double omega, const QuadratureSpec& spec = {});
BoundReport prop1_bound(const OperatorParams& op, double omega, const QuadratureSpec& spec = {});
BoundReport prop2_bound(const OperatorParams& op, double omega, const QuadratureSpec& spec = {});
BoundReport thm3_bound(const OperatorParams& op, double omega, const QuadratureSpec& spec = {});
BoundReport thm4_bound(const OperatorParams& op, double omega, const QuadratureSpec& spec = {});
BoundReport prop3_bound(const OperatorParams& op, double omega, const QuadratureSpec& spec = {});
BoundReport prop4_bound(int alpha, double beta, double omega);

BoundReport bound_for(StatementId id, const OperatorParams& op, double omega,
                      const QuadratureSpec& spec = {});

/// Relative residual between the closed form
/// lambda = xi^(n - 2ab) sum_{k=1..r+1} C(r+1,k) K_{n+k} and its direct
/// quadrature. Used as an internal consistency oracle by thm2_bound.
double thm2_lambda_residual(const OperatorParams& op, const QuadratureSpec& spec = {});

} // namespace pcops::bounds
