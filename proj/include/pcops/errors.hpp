#pragma once

#include <stdexcept>
#include <string>

namespace pcops {

// Integral does not converge (decay hint too weak, or a constraint that
// guarantees integrability is violated).
class divergence_error : public std::domain_error {
public:
    explicit divergence_error(const std::string& msg) : std::domain_error(msg) {}
};

// A requested derivative order or Lp membership is not available on the
// supplied test function.
class capability_error : public std::domain_error {
public:
    explicit capability_error(const std::string& msg) : std::domain_error(msg) {}
};

// Adaptive quadrature exhausted its subdivision budget. Carries the best
// estimate so callers can decide whether it is still usable.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double best_estimate, double error_estimate)
        : std::runtime_error(msg), best_(best_estimate), err_(error_estimate) {}

    double best_estimate() const { return best_; }
    double error_estimate() const { return err_; }

private:
    double best_;
    double err_;
};

} // namespace pcops
