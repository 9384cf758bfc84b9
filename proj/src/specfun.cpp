#include "pcops/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace pcops::specfun {

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("log_gamma: argument must be positive and finite");

    // Lanczos approximation, g = 671/128. The 14-term coefficient set is
    // accurate to better than 1e-14 relative over the positive axis.
    static const double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,
        14.1360979747417471,     -0.491913816097620199,
        0.339946499848118887e-4, 0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3,
        -0.210264441724104883e-3, 0.217439618115212643e-3,
        -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};

    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

double gamma_ratio(std::span<const double> numers, std::span<const double> denoms) {
    double acc = 0.0;
    for (double v : numers) acc += log_gamma(v);
    for (double v : denoms) acc -= log_gamma(v);
    return std::exp(acc);
}

std::int64_t binomial(int r, int j) {
    if (r < 0 || j < 0 || j > r)
        throw std::domain_error("binomial: require 0 <= j <= r");
    if (r > 62)
        throw std::range_error("binomial: r > 62 exceeds exact 64-bit range");

    if (j > r - j) j = r - j;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= j; ++i) {
        acc = acc * static_cast<unsigned>(r - j + i);
        acc /= static_cast<unsigned>(i); // exact: C(r-j+i, i) is an integer
    }
    return static_cast<std::int64_t>(acc);
}

} // namespace pcops::specfun
