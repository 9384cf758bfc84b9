#include "pcops/coefficients.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "pcops/specfun.hpp"

namespace pcops::operators {

CoefficientSet alphas(int r, int n) {
    if (r < 1) throw std::domain_error("alphas: r must be >= 1");
    if (n < 0) throw std::domain_error("alphas: n must be >= 0");

    CoefficientSet cs;
    cs.alphas.assign(static_cast<size_t>(r) + 1, 0.0);
    double tail_sum = 0.0;
    for (int j = 1; j <= r; ++j) {
        const double sign = ((r - j) % 2 == 0) ? 1.0 : -1.0;
        const double c = static_cast<double>(specfun::binomial(r, j));
        const double a = sign * c * std::pow(static_cast<double>(j), -static_cast<double>(n));
        cs.alphas[static_cast<size_t>(j)] = a;
        tail_sum += a;
    }
    cs.alphas[0] = 1.0 - tail_sum;

    const int kmax = std::max(n, 1);
    cs.deltas.assign(static_cast<size_t>(kmax), 0.0);
    for (int k = 1; k <= kmax; ++k) {
        double d = 0.0;
        for (int j = 1; j <= r; ++j)
            d += cs.alphas[static_cast<size_t>(j)] *
                 std::pow(static_cast<double>(j), static_cast<double>(k));
        cs.deltas[static_cast<size_t>(k) - 1] = d;
    }
    return cs;
}

bool binomial_identity_check(int r) {
    if (r < 1) throw std::domain_error("binomial_identity_check: r must be >= 1");
    std::int64_t sum = 0;
    for (int j = 1; j <= r; ++j) {
        const std::int64_t term = specfun::binomial(r, j);
        sum += ((r - j) % 2 == 0) ? term : -term;
    }
    const std::int64_t rhs = (r % 2 == 0) ? 1 : -1;
    return -sum == rhs;
}

} // namespace pcops::operators
