#pragma once

#include <vector>

namespace pcops::operators {

// Coefficients alpha_0..alpha_r of the smoothing operator together with the
// derived sums delta_k = sum_{j=1..r} alpha_j j^k.
struct CoefficientSet {
    std::vector<double> alphas; // index j = 0..r
    std::vector<double> deltas; // deltas[k-1] = delta_k, k = 1..K

    double delta(int k) const { return deltas.at(static_cast<size_t>(k) - 1); }
};

/// alpha_j = (-1)^(r-j) C(r,j) j^(-n) for j = 1..r and
/// alpha_0 = 1 - sum of the others, so the alphas always sum to 1.
/// n = 0 is allowed (j^0 = 1, pure signed binomials). deltas are populated
/// for k = 1..max(n, 1).
CoefficientSet alphas(int r, int n);

/// Exact integer check of -sum_{j=1..r} (-1)^(r-j) C(r,j) == (-1)^r.
bool binomial_identity_check(int r);

} // namespace pcops::operators
