#include "pcops/bounds.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "pcops/specfun.hpp"

namespace pcops::bounds {

using kernel::halfline_moment;
using kernel::KernelParams;
using quad::Integrand;
using specfun::binomial;
using specfun::log_gamma;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ln_factorial(int m) { return log_gamma(m + 1.0); }

// The xi-free quadrature constants are cached; convergence sweeps reuse the
// same constant across the whole xi grid.
struct ConstKey {
    int which;
    double p;
    int n;
    int r;
    int alpha;
    double beta;
    auto operator<=>(const ConstKey&) const = default;
};

std::map<ConstKey, double>& const_cache() {
    static std::map<ConstKey, double> cache;
    return cache;
}
std::mutex cache_mutex;

template <typename Fn>
double cached(const ConstKey& key, Fn&& compute) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = const_cache().find(key);
        if (it != const_cache().end()) return it->second;
    }
    const double value = compute();
    std::lock_guard<std::mutex> lock(cache_mutex);
    return const_cache().emplace(key, value).first->second;
}

// Integral over [0, inf) of (1+u)^a_pow * u^(u_pow) / (u^(2 alpha) + 1)^b,
// with the (1+u)^a_pow - subtract_one option handled through expm1 so tiny u
// does not lose digits.
double tail_power_integral(double a_pow, bool subtract_one, double u_pow, int alpha,
                           double b, double decay, const quad::QuadratureSpec& spec) {
    if (!(decay > 1.0))
        throw divergence_error("constant integral diverges under these parameters");
    KernelParams kq{alpha, b, 1.0};
    Integrand g;
    g.eval = [=](double u) {
        const double lead = subtract_one ? std::expm1(a_pow * std::log1p(u))
                                         : std::exp(a_pow * std::log1p(u));
        return lead * std::pow(u, u_pow) * kernel::kernel_value(u, kq);
    };
    g.decay_exponent_hint = decay;
    return quad::integrate_halfline(g, spec);
}

double require_positive(double x, const char* what) {
    if (!(x > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
    return x;
}

} // namespace

const char* statement_name(StatementId id) {
    switch (id) {
        case StatementId::thm1: return "thm1";
        case StatementId::thm2: return "thm2";
        case StatementId::prop1: return "prop1";
        case StatementId::prop2: return "prop2";
        case StatementId::thm3: return "thm3";
        case StatementId::thm4: return "thm4";
        case StatementId::prop3: return "prop3";
        case StatementId::prop4: return "prop4";
    }
    return "?";
}

StatementId statement_from_name(const std::string& name) {
    for (StatementId id : {StatementId::thm1, StatementId::thm2, StatementId::prop1,
                           StatementId::prop2, StatementId::thm3, StatementId::thm4,
                           StatementId::prop3, StatementId::prop4})
        if (name == statement_name(id)) return id;
    throw std::invalid_argument("unknown statement: " + name);
}

double beta_threshold(StatementId id, const OperatorParams& op) {
    const double a = op.kp.alpha;
    const double p = op.p;
    switch (id) {
        case StatementId::thm1: return (1.0 / p + op.n + op.r) / a;
        case StatementId::thm2: return (op.n + op.r + 1.0) / (2.0 * a);
        case StatementId::prop1: return (op.r + 1.0 / p) / a;
        case StatementId::prop2: return (op.r + 1.0) / (2.0 * a);
        case StatementId::thm3: return (1.0 / p + op.n + 2.0) / a;
        case StatementId::thm4: return (op.n + 3.0) / (2.0 * a);
        case StatementId::prop3: return (2.0 + 1.0 / p) / a;
        case StatementId::prop4: return 3.0 / (2.0 * a);
    }
    return kNaN;
}

bool constraint_holds(StatementId id, const OperatorParams& op) {
    if (op.r < 1 || op.kp.alpha < 1 || !(op.p >= 1.0)) return false;
    switch (id) {
        case StatementId::thm1:
            if (!(op.p > 1.0) || op.n < 1) return false;
            break;
        case StatementId::thm2:
            if (op.p != 1.0 || op.n < 1) return false;
            break;
        case StatementId::prop1:
            if (!(op.p > 1.0)) return false;
            break;
        case StatementId::prop2:
            if (op.p != 1.0) return false;
            break;
        case StatementId::thm3:
            if (!(op.p > 1.0) || op.n < 2 || op.n % 2 != 0) return false;
            break;
        case StatementId::thm4:
            if (op.p != 1.0 || op.n < 2 || op.n % 2 != 0) return false;
            break;
        case StatementId::prop3:
            if (!(op.p > 1.0)) return false;
            break;
        case StatementId::prop4:
            if (op.p != 1.0) return false;
            break;
    }
    return op.kp.beta > beta_threshold(id, op);
}

double BoundReport::prefactor() const {
    auto it = constant_values.find("prefactor");
    return it == constant_values.end() ? kNaN : it->second;
}

double tau_constant(double p, int n, int r, int alpha, double beta,
                    const quad::QuadratureSpec& spec) {
    if (!(p > 1.0)) throw std::domain_error("tau_constant: requires p > 1");
    if (n < 1 || r < 1 || alpha < 1) throw std::domain_error("tau_constant: bad shape");
    if (!(beta > (1.0 / p + n + r) / alpha))
        throw std::domain_error("tau_constant: requires beta > (1/p + n + r)/alpha");
    return cached({0, p, n, r, alpha, beta}, [&] {
        return require_positive(
            tail_power_integral(r * p + 1.0, true, n * p - 1.0, alpha, p * beta / 2.0,
                                p * (alpha * beta - n - r), spec),
            "tau");
    });
}

double theta_constant(double p, int r, int alpha, double beta,
                      const quad::QuadratureSpec& spec) {
    if (!(p > 1.0)) throw std::domain_error("theta_constant: requires p > 1");
    if (r < 1 || alpha < 1) throw std::domain_error("theta_constant: bad shape");
    if (!(beta > (r + 1.0 / p) / alpha))
        throw std::domain_error("theta_constant: requires beta > (r + 1/p)/alpha");
    return cached({1, p, 0, r, alpha, beta}, [&] {
        return require_positive(
            tail_power_integral(r * p, false, 0.0, alpha, p * beta / 2.0,
                                p * (alpha * beta - r), spec),
            "theta");
    });
}

double rho_constant(double p, int alpha, double beta, const quad::QuadratureSpec& spec) {
    if (!(p > 1.0)) throw std::domain_error("rho_constant: requires p > 1");
    if (alpha < 1) throw std::domain_error("rho_constant: bad shape");
    if (!(beta > (2.0 + 1.0 / p) / alpha))
        throw std::domain_error("rho_constant: requires beta > (2 + 1/p)/alpha");
    return cached({2, p, 0, 0, alpha, beta}, [&] {
        return require_positive(
            tail_power_integral(2.0 * p, false, 0.0, alpha, p * beta / 2.0,
                                p * (alpha * beta - 2.0), spec),
            "rho");
    });
}

double tau_tilde_constant(double p, int n, int alpha, double beta,
                          const quad::QuadratureSpec& spec) {
    if (!(p > 1.0)) throw std::domain_error("tau_tilde_constant: requires p > 1");
    if (n < 1 || alpha < 1) throw std::domain_error("tau_tilde_constant: bad shape");
    if (!(beta > (1.0 / p + n + 2.0) / alpha))
        throw std::domain_error("tau_tilde_constant: requires beta > (1/p + n + 2)/alpha");
    return cached({3, p, n, 0, alpha, beta}, [&] {
        return require_positive(
            tail_power_integral(2.0 * p + 1.0, true, p * n - 1.0, alpha, p * beta / 2.0,
                                p * (alpha * beta - n - 2.0), spec),
            "tau_tilde");
    });
}

double prop2_integral(int r, int alpha, double beta) {
    if (r < 1 || alpha < 1) throw std::domain_error("prop2_integral: bad shape");
    if (!(beta > (r + 1.0) / (2.0 * alpha)))
        throw std::domain_error("prop2_integral: requires beta > (r+1)/(2 alpha)");
    double acc = 0.0;
    for (int k = 0; k <= r; ++k)
        acc += static_cast<double>(binomial(r, k)) * halfline_moment(k + 1, alpha, beta);
    return acc;
}

double thm2_lambda_residual(const OperatorParams& op, const quad::QuadratureSpec& spec) {
    const int alpha = op.kp.alpha;
    const double beta = op.kp.beta;
    const double xi = op.kp.xi;
    double sum_k = 0.0;
    for (int k = 1; k <= op.r + 1; ++k)
        sum_k += static_cast<double>(binomial(op.r + 1, k)) *
                 halfline_moment(op.n + k, alpha, beta);
    const double lambda_closed =
        std::exp((op.n - 2.0 * alpha * beta) * std::log(xi)) * sum_k;

    Integrand g;
    g.eval = [&](double t) {
        return std::expm1((op.r + 1.0) * std::log1p(t / xi)) *
               std::pow(t, op.n - 1.0) * kernel::kernel_value(t, op.kp);
    };
    g.decay_exponent_hint = 2.0 * alpha * beta - op.n - op.r;
    g.peak_scale = xi;
    const double lambda_quad = quad::integrate_halfline(g, spec);
    return std::abs(lambda_quad - lambda_closed) / std::abs(lambda_closed);
}

namespace {

BoundReport make_report(StatementId id, const OperatorParams& op, double omega) {
    BoundReport rep;
    rep.statement_id = id;
    rep.params = op;
    rep.modulus_value = omega;
    rep.constraint_ok = constraint_holds(id, op);
    rep.bound_value = kNaN;
    rep.constant_values["beta_threshold"] = beta_threshold(id, op);
    return rep;
}

void finish(BoundReport& rep, double prefactor, double omega) {
    rep.constant_values["prefactor"] = prefactor;
    rep.bound_value = prefactor * omega;
}

} // namespace

BoundReport thm1_bound(const OperatorParams& op, double omega,
                       const quad::QuadratureSpec& spec) {
    BoundReport rep = make_report(StatementId::thm1, op, omega);
    if (!rep.constraint_ok) return rep;
    const double p = op.p, q = p / (p - 1.0);
    const double a = op.kp.alpha, b = op.kp.beta;
    const double inv2a = 1.0 / (2.0 * a);
    const double tau = tau_constant(p, op.n, op.r, op.kp.alpha, b, spec);
    const double ln_pre = std::log(2.0 * a) / p + log_gamma(b) +
                          log_gamma(q * b / 2.0 - inv2a) / q + std::log(tau) / p -
                          log_gamma(q * b / 2.0) / q - log_gamma(inv2a) / p -
                          log_gamma(b - inv2a) - std::log(op.r * p + 1.0) / p -
                          ln_factorial(op.n - 1) - std::log(q * (op.n - 1.0) + 1.0) / q;
    rep.constant_values["q"] = q;
    rep.constant_values["tau"] = tau;
    finish(rep, std::exp(ln_pre + op.n * std::log(op.kp.xi)), omega);
    return rep;
}

BoundReport thm2_bound(const OperatorParams& op, double omega,
                       const quad::QuadratureSpec& spec) {
    BoundReport rep = make_report(StatementId::thm2, op, omega);
    if (!rep.constraint_ok) return rep;
    const double a = op.kp.alpha, b = op.kp.beta;
    const double inv2a = 1.0 / (2.0 * a);
    const double ln_denom = log_gamma(inv2a) + log_gamma(b - inv2a);
    double bracket_over_denom = 0.0;
    for (int k = 1; k <= op.r + 1; ++k) {
        const double arg = (op.n + k) * inv2a;
        bracket_over_denom +=
            static_cast<double>(binomial(op.r + 1, k)) *
            std::exp(log_gamma(arg) + log_gamma(b - arg) - ln_denom);
    }
    const double pre = bracket_over_denom /
                       ((op.r + 1.0) * std::exp(ln_factorial(op.n - 1)));
    const double lambda_residual = thm2_lambda_residual(op, spec);
    if (!(lambda_residual <= 1e-7))
        throw std::runtime_error("thm2_bound: lambda closed form and quadrature disagree");
    rep.constant_values["bracket_over_gammas"] = bracket_over_denom;
    rep.constant_values["lambda_residual"] = lambda_residual;
    finish(rep, pre * std::exp(op.n * std::log(op.kp.xi)), omega);
    return rep;
}

BoundReport prop1_bound(const OperatorParams& op, double omega,
                        const quad::QuadratureSpec& spec) {
    BoundReport rep = make_report(StatementId::prop1, op, omega);
    if (!rep.constraint_ok) return rep;
    const double p = op.p, q = p / (p - 1.0);
    const double a = op.kp.alpha, b = op.kp.beta;
    const double inv2a = 1.0 / (2.0 * a);
    const double theta = theta_constant(p, op.r, op.kp.alpha, b, spec);
    const double ln_pre = std::log(2.0 * a) / p + log_gamma(b) +
                          log_gamma(q * b / 2.0 - inv2a) / q + std::log(theta) / p -
                          log_gamma(inv2a) / p - log_gamma(b - inv2a) -
                          log_gamma(q * b / 2.0) / q;
    rep.constant_values["q"] = q;
    rep.constant_values["theta"] = theta;
    finish(rep, std::exp(ln_pre), omega);
    return rep;
}

BoundReport prop2_bound(const OperatorParams& op, double omega,
                        const quad::QuadratureSpec& spec) {
    BoundReport rep = make_report(StatementId::prop2, op, omega);
    if (!rep.constraint_ok) return rep;
    const double a = op.kp.alpha, b = op.kp.beta;
    const double inv2a = 1.0 / (2.0 * a);
    const double integral = prop2_integral(op.r, op.kp.alpha, b);

    const double quad_integral = cached({4, 1.0, 0, op.r, op.kp.alpha, b}, [&] {
        return tail_power_integral(static_cast<double>(op.r), false, 0.0, op.kp.alpha,
                                   b, 2.0 * a * b - op.r, spec);
    });
    const double residual = std::abs(quad_integral - integral) / integral;
    if (!(residual <= 1e-7))
        throw std::runtime_error("prop2_bound: expansion and quadrature disagree");

    const double pre = std::exp(std::log(2.0 * a) + log_gamma(b) - log_gamma(inv2a) -
                                log_gamma(b - inv2a)) *
                       integral;
    rep.constant_values["integral"] = integral;
    rep.constant_values["integral_residual"] = residual;
    finish(rep, pre, omega);
    return rep;
}

BoundReport thm3_bound(const OperatorParams& op, double omega,
                       const quad::QuadratureSpec& spec) {
    BoundReport rep = make_report(StatementId::thm3, op, omega);
    if (!rep.constraint_ok) return rep;
    const double p = op.p, q = p / (p - 1.0);
    const double a = op.kp.alpha, b = op.kp.beta;
    const double inv2a = 1.0 / (2.0 * a);
    const double tt = tau_tilde_constant(p, op.n, op.kp.alpha, b, spec);
    const double ln_pre = std::log(tt) / p + std::log(a) / p +
                          log_gamma(q * b / 2.0 - inv2a) / q - std::log(2.0) / q -
                          log_gamma(inv2a) / p - log_gamma(b - inv2a) -
                          log_gamma(q * b / 2.0) / q -
                          std::log(q * (op.n - 1.0) + 1.0) / q -
                          std::log(2.0 * p + 1.0) / p + log_gamma(b) -
                          ln_factorial(op.n - 1);
    rep.constant_values["q"] = q;
    rep.constant_values["tau_tilde"] = tt;
    finish(rep, std::exp(ln_pre + op.n * std::log(op.kp.xi)), omega);
    return rep;
}

BoundReport thm4_bound(const OperatorParams& op, double omega,
                       const quad::QuadratureSpec& spec) {
    (void)spec;
    BoundReport rep = make_report(StatementId::thm4, op, omega);
    if (!rep.constraint_ok) return rep;
    const double a = op.kp.alpha, b = op.kp.beta;
    const double inv2a = 1.0 / (2.0 * a);
    const double ln_denom = log_gamma(inv2a) + log_gamma(b - inv2a);
    const double coeff[3] = {3.0, 3.0, 1.0};
    double bracket_over_denom = 0.0;
    for (int i = 1; i <= 3; ++i) {
        const double arg = (op.n + i) * inv2a;
        bracket_over_denom += coeff[i - 1] *
                              std::exp(log_gamma(arg) + log_gamma(b - arg) - ln_denom);
    }
    const double pre = bracket_over_denom / (6.0 * std::exp(ln_factorial(op.n - 1)));
    rep.constant_values["bracket_over_gammas"] = bracket_over_denom;
    finish(rep, pre * std::exp(op.n * std::log(op.kp.xi)), omega);
    return rep;
}

BoundReport prop3_bound(const OperatorParams& op, double omega,
                        const quad::QuadratureSpec& spec) {
    BoundReport rep = make_report(StatementId::prop3, op, omega);
    if (!rep.constraint_ok) return rep;
    const double p = op.p, q = p / (p - 1.0);
    const double a = op.kp.alpha, b = op.kp.beta;
    const double inv2a = 1.0 / (2.0 * a);
    const double rho = rho_constant(p, op.kp.alpha, b, spec);
    const double ln_pre = std::log(rho) / p + log_gamma(b) + std::log(a) / p +
                          log_gamma(q * b / 2.0 - inv2a) / q - std::log(2.0) / q -
                          log_gamma(inv2a) / p - log_gamma(b - inv2a) -
                          log_gamma(q * b / 2.0) / q;
    rep.constant_values["q"] = q;
    rep.constant_values["rho"] = rho;
    finish(rep, std::exp(ln_pre), omega);
    return rep;
}

BoundReport prop4_bound(int alpha, double beta, double omega) {
    OperatorParams op;
    op.r = 1;
    op.n = 0;
    op.p = 1.0;
    op.kp = KernelParams{alpha, beta, 1.0};
    BoundReport rep = make_report(StatementId::prop4, op, omega);
    if (!rep.constraint_ok) return rep;
    const double a = alpha;
    const double inv2a = 1.0 / (2.0 * a);
    const double denom[2] = {inv2a, beta - inv2a};
    const double n1[2] = {1.0 / a, beta - 1.0 / a};
    const double n2[2] = {3.0 * inv2a, beta - 3.0 * inv2a};
    const double bracket = 0.5 + specfun::gamma_ratio(n1, denom) +
                           0.5 * specfun::gamma_ratio(n2, denom);
    rep.constant_values["bracket"] = bracket;
    finish(rep, bracket, omega);
    return rep;
}

BoundReport bound_for(StatementId id, const OperatorParams& op, double omega,
                      const quad::QuadratureSpec& spec) {
    switch (id) {
        case StatementId::thm1: return thm1_bound(op, omega, spec);
        case StatementId::thm2: return thm2_bound(op, omega, spec);
        case StatementId::prop1: return prop1_bound(op, omega, spec);
        case StatementId::prop2: return prop2_bound(op, omega, spec);
        case StatementId::thm3: return thm3_bound(op, omega, spec);
        case StatementId::thm4: return thm4_bound(op, omega, spec);
        case StatementId::prop3: return prop3_bound(op, omega, spec);
        case StatementId::prop4: {
            BoundReport rep = prop4_bound(op.kp.alpha, op.kp.beta, omega);
            rep.params = op;
            if (!constraint_holds(StatementId::prop4, op)) {
                rep.constraint_ok = false;
                rep.bound_value = kNaN;
            }
            return rep;
        }
    }
    throw std::invalid_argument("bound_for: unknown statement");
}

} // namespace pcops::bounds
