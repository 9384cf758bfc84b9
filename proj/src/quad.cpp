#include "pcops/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace pcops::quad {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights (positive half).
const double kXgk[8] = {
    0.991455371120812639207, 0.949107912342758524526, 0.864864423359769072789,
    0.741531185599394439864, 0.586087235467691130294, 0.405845151377397166906,
    0.207784955007898467600, 0.0};
const double kWgk[8] = {
    0.022935322010529224964, 0.063092092629978553291, 0.104790010322250183839,
    0.140653259715525918745, 0.169004726639267902827, 0.190350578064785409913,
    0.204432940075298892414, 0.209482141084727828013};
const double kWg[4] = {
    0.129484966168869693271, 0.279705391489276667901, 0.381830050505118944950,
    0.417959183673469387755};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double err = 0.0;
    bool splittable = true;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    double fv1[7], fv2[7];
    const double fc = f(center);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        fv1[j] = f(center - absc);
        fv2[j] = f(center + absc);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * hlgth;
    resabs *= std::abs(hlgth);
    resasc *= std::abs(hlgth);
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    p.err = err;
    // A panel whose error sits at the rounding floor cannot be improved by
    // splitting.
    p.splittable = err > 100.0 * eps * resabs + uflow;
    return p;
}

struct WorstFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

// Interior panel boundaries: listed singularities, the kernel-peak layout
// {0, +-s, +-2s, +-4s, +-8s}, and for wide domains a geometric ladder so the
// first Kronrod pass cannot step over a narrow feature near the origin.
std::vector<double> initial_points(const Integrand& g, double a, double b) {
    std::vector<double> pts;
    auto add = [&](double x) {
        if (x > a && x < b) pts.push_back(x);
    };
    for (double s : g.known_singularities) add(s);
    const double xi = g.peak_scale;
    if (xi > 0.0) {
        add(0.0);
        for (double m : {1.0, 2.0, 4.0, 8.0}) {
            add(m * xi);
            add(-m * xi);
        }
    }
    const double s0 = std::max(1.0, 8.0 * xi);
    if (b - a > 16.0 * s0) {
        add(0.0);
        const double lim = std::max(std::abs(a), std::abs(b));
        for (double t = s0 / 16.0; t < lim; t *= 2.0) {
            add(t);
            add(-t);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double sum_sorted(std::vector<Panel>& panels, double& err_out) {
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    double v = 0.0, e = 0.0;
    for (const Panel& p : panels) {
        v += p.value;
        e += p.err;
    }
    err_out = e;
    return v;
}

// Estimated truncation radius for one tail: |g(t)| <= C |t|^-d beyond the
// sampled range gives tail(R) = C R^(1-d) / (d-1) <= tail_tol. C is taken
// from the envelope of |g| over a geometric ladder of samples.
double truncation_radius(const Integrand& g, double base, int sign,
                         const QuadratureSpec& spec) {
    const double d = g.decay_exponent_hint;
    if (!(d > 1.0))
        throw divergence_error("improper integral requires decay_exponent_hint > 1");
    const double r0 = std::max(base, 1.0);
    double log_c = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 40; ++k) {
        const double t = r0 * std::pow(2.0, k);
        const double v = std::abs(g.eval(sign * t));
        if (std::isfinite(v) && v > 0.0)
            log_c = std::max(log_c, std::log(v) + d * std::log(t));
    }
    double r = 4.0 * r0;
    if (std::isfinite(log_c)) {
        const double log_r =
            (log_c - std::log(spec.tail_tol * (d - 1.0))) / (d - 1.0);
        r = std::max(r, std::exp(std::min(log_r, std::log(1e15))));
    }
    return r;
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(tail_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 16)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 16");
}

double integrate_finite(const Integrand& g, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (!(a <= b)) throw std::invalid_argument("integrate_finite: require a <= b");
    if (a == b) return 0.0;

    std::vector<double> cuts = initial_points(g, a, b);
    cuts.insert(cuts.begin(), a);
    cuts.push_back(b);

    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
    std::vector<Panel> parked; // at rounding floor, not worth splitting
    double total_val = 0.0, total_err = 0.0;
    size_t count = 0;
    auto push = [&](const Panel& p) {
        total_val += p.value;
        total_err += p.err;
        ++count;
        if (p.splittable)
            queue.push(p);
        else
            parked.push_back(p);
    };
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        push(eval_panel(g.eval, cuts[i], cuts[i + 1]));

    auto tolerance = [&] {
        return std::max(spec.abs_tol, spec.rel_tol * std::abs(total_val));
    };

    while (total_err > tolerance() && !queue.empty()) {
        if (count >= static_cast<size_t>(spec.max_subdivisions)) {
            std::vector<Panel> all = parked;
            while (!queue.empty()) {
                all.push_back(queue.top());
                queue.pop();
            }
            double err = 0.0;
            const double best = sum_sorted(all, err);
            throw convergence_error("integrate_finite: subdivision budget exhausted",
                                    best, err);
        }
        Panel worst = queue.top();
        queue.pop();
        total_val -= worst.value;
        total_err -= worst.err;
        --count;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            worst.splittable = false;
            total_val += worst.value;
            total_err += worst.err;
            ++count;
            parked.push_back(worst);
            continue;
        }
        push(eval_panel(g.eval, worst.a, mid));
        push(eval_panel(g.eval, mid, worst.b));
    }

    std::vector<Panel> all = parked;
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    double err = 0.0;
    return sum_sorted(all, err);
}

double integrate_halfline(const Integrand& g, const QuadratureSpec& spec) {
    spec.validate();
    double base = std::max(1.0, 8.0 * g.peak_scale);
    for (double s : g.known_singularities) base = std::max(base, std::abs(s) + 1.0);
    const double r = truncation_radius(g, base, +1, spec);
    return integrate_finite(g, 0.0, r, spec);
}

double integrate_realline(const Integrand& g, const QuadratureSpec& spec) {
    spec.validate();
    double base = std::max(1.0, 8.0 * g.peak_scale);
    for (double s : g.known_singularities) base = std::max(base, std::abs(s) + 1.0);
    const double r_pos = truncation_radius(g, base, +1, spec);
    const double r_neg = truncation_radius(g, base, -1, spec);
    return integrate_finite(g, -r_neg, r_pos, spec);
}

double lp_norm(const Integrand& g, double p, const QuadratureSpec& spec) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: require p >= 1");
    if (!(g.decay_exponent_hint * p > 1.0))
        throw divergence_error("lp_norm: |g|^p not integrable per decay hint");
    Integrand gp = g;
    const auto eval = g.eval;
    gp.eval = [eval, p](double t) { return std::pow(std::abs(eval(t)), p); };
    gp.decay_exponent_hint = g.decay_exponent_hint * p;
    const double ip = integrate_realline(gp, spec);
    return std::pow(std::max(ip, 0.0), 1.0 / p);
}

} // namespace pcops::quad
