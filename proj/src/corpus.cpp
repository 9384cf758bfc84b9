#include "pcops/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

namespace pcops::harness {

using smoothness::TestFunction;

namespace {

constexpr int kMaxOrder = 8;

template <typename T>
T poly_eval(const std::vector<T>& c, double x) {
    T acc{};
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Derivative polynomials of g(x) * exp(-x^2 + i c x):
// P_0 = 1, P_{k+1} = P_k' + (-2x + i c) P_k.
std::vector<std::vector<std::complex<double>>> gaussian_polys(double c) {
    std::vector<std::vector<std::complex<double>>> polys;
    polys.push_back({{1.0, 0.0}});
    for (int k = 0; k < kMaxOrder; ++k) {
        const auto& p = polys.back();
        std::vector<std::complex<double>> next(p.size() + 1, std::complex<double>{});
        for (size_t i = 1; i < p.size(); ++i) next[i - 1] += static_cast<double>(i) * p[i];
        for (size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += -2.0 * p[i];
            next[i] += std::complex<double>(0.0, c) * p[i];
        }
        polys.push_back(std::move(next));
    }
    return polys;
}

// Derivative polynomials of (1+x^2)^-m: the k-th derivative equals
// Q_k(x) / (1+x^2)^(m+k) with Q_0 = 1 and
// Q_{k+1} = Q_k' (1+x^2) - 2 (m+k) x Q_k.
std::vector<std::vector<double>> rational_polys(int m) {
    std::vector<std::vector<double>> polys;
    polys.push_back({1.0});
    for (int k = 0; k < kMaxOrder; ++k) {
        const auto& q = polys.back();
        std::vector<double> next(q.size() + 1, 0.0);
        for (size_t i = 1; i < q.size(); ++i) {
            next[i - 1] += static_cast<double>(i) * q[i]; // Q'
            next[i + 1] += static_cast<double>(i) * q[i]; // Q' x^2
        }
        for (size_t i = 0; i < q.size(); ++i) next[i + 1] += -2.0 * (m + k) * q[i];
        polys.push_back(std::move(next));
    }
    return polys;
}

TestFunction make_gaussian() {
    auto polys = std::make_shared<std::vector<std::vector<std::complex<double>>>>(
        gaussian_polys(0.0));
    TestFunction f;
    f.name = "gaussian";
    f.order = kMaxOrder;
    f.derivatives = [polys](int k, double x) {
        return poly_eval((*polys)[static_cast<size_t>(k)], x).real() * std::exp(-x * x);
    };
    f.lp_member = [](int, double) { return true; };
    f.decay_exponent = 20.0;
    f.support_radius = [](double eps) {
        return std::sqrt(std::max(1.0, std::log(1.0 / eps))) + 4.0;
    };
    return f;
}

TestFunction make_modulated_gaussian() {
    auto polys = std::make_shared<std::vector<std::vector<std::complex<double>>>>(
        gaussian_polys(3.0));
    TestFunction f;
    f.name = "modulated_gaussian";
    f.order = kMaxOrder;
    f.derivatives = [polys](int k, double x) {
        const std::complex<double> phase(std::cos(3.0 * x), std::sin(3.0 * x));
        const std::complex<double> v =
            poly_eval((*polys)[static_cast<size_t>(k)], x) * phase;
        return v.imag() * std::exp(-x * x);
    };
    f.lp_member = [](int, double) { return true; };
    f.decay_exponent = 20.0;
    f.support_radius = [](double eps) {
        return std::sqrt(std::max(1.0, std::log(1.0 / eps))) + 4.0;
    };
    return f;
}

TestFunction make_rational(int m, const std::string& name, double decay) {
    auto polys = std::make_shared<std::vector<std::vector<double>>>(rational_polys(m));
    TestFunction f;
    f.name = name;
    f.order = kMaxOrder;
    f.derivatives = [polys, m](int k, double x) {
        const double denom = 1.0 + x * x;
        return poly_eval((*polys)[static_cast<size_t>(k)], x) *
               std::pow(denom, -static_cast<double>(m + k));
    };
    // f^(k) decays like |x|^-(2m+k); in L_p for every p >= 1.
    f.lp_member = [](int, double) { return true; };
    f.decay_exponent = decay;
    if (m == 1) {
        f.support_radius = [](double eps) { return std::max(16.0, 2.0 / eps); };
    } else {
        const double d = 2.0 * m; // slowest decay (k = 0)
        f.support_radius = [d](double eps) {
            return std::max(16.0, std::pow(2.0 / ((d - 1.0) * eps), 1.0 / (d - 1.0)));
        };
    }
    return f;
}

} // namespace

TestFunction constant_function(double c) {
    TestFunction f;
    f.name = "constant";
    f.order = kMaxOrder;
    f.derivatives = [c](int k, double) { return k == 0 ? c : 0.0; };
    // Degenerate fixture: every difference vanishes, so norms over a fixed
    // window stand in for the (non-existent) Lp norms.
    f.lp_member = [](int, double) { return true; };
    f.decay_exponent = 0.0;
    f.support_radius = [](double) { return 50.0; };
    return f;
}

const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> corpus = [] {
        std::vector<CorpusEntry> v;
        v.push_back({"gaussian", make_gaussian(),
                     "exp(-x^2); all derivatives in every L_p, p >= 1"});
        v.push_back({"cauchy_bump", make_rational(1, "cauchy_bump", 2.0),
                     "1/(1+x^2); f^(k) ~ |x|^-(2+k), in L_p for all p >= 1"});
        v.push_back({"modulated_gaussian", make_modulated_gaussian(),
                     "sin(3x) exp(-x^2); all derivatives in every L_p"});
        v.push_back({"rational3", make_rational(3, "rational3", 6.0),
                     "(1+x^2)^-3; f^(k) ~ |x|^-(6+k), in L_p for all p >= 1"});
        v.push_back({"constant", constant_function(1.0),
                     "degenerate smoke entry: f == 1, truncated norms"});
        return v;
    }();
    return corpus;
}

const CorpusEntry& corpus_entry(const std::string& name) {
    for (const CorpusEntry& e : builtin_corpus())
        if (e.name == name) return e;
    throw std::invalid_argument("unknown corpus function: " + name);
}

} // namespace pcops::harness
