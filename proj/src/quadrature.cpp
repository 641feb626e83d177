#include "eggkernel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <string>

#include "eggkernel/errors.hpp"

namespace eggkernel::quad {

namespace {

// Gauss 7 / Kronrod 15 pair on [-1,1]. Positive abscissas; even nodes (0-based
// odd indices here) form the embedded Gauss rule.
constexpr double kronrod_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kronrod_w[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

bool panel_worse(const Panel& x, const Panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a < y.a;  // deterministic tie-break
}

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kronrod_x[i]);
        fv[14 - i] = f(c + h * kronrod_x[i]);
    }
    fv[7] = f(c);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 7; ++i) k15 += kronrod_w[i] * (fv[i] + fv[14 - i]);
    k15 += kronrod_w[7] * fv[7];
    for (int i = 0; i < 3; ++i) g7 += gauss_w[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    g7 += gauss_w[3] * fv[7];
    k15 *= h;
    g7 *= h;
    if (!std::isfinite(k15))
        throw_numeric(errc::overflow, "integrate_adaptive: integrand evaluated to a non-finite value");
    // QUADPACK-style scale-aware estimate: resasc measures the variation of f
    // over the panel so the (200 dk)^{3/2} sharpening stays dimensionless.
    double mean = k15 / (b - a);
    double resasc = 0.0;
    for (int i = 0; i < 7; ++i) resasc += kronrod_w[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    resasc += kronrod_w[7] * std::abs(fv[7] - mean);
    resasc *= h;
    double err = std::abs(k15 - g7);
    if (resasc > 0.0 && err > 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {a, b, k15, err};
}

// Position-ordered compensated reduction so the result is independent of the
// refinement history.
void reduce_panels(std::vector<Panel>& panels, double& value, double& error) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double sv = 0.0, cv = 0.0, se = 0.0;
    for (const Panel& p : panels) {
        double y = p.value - cv;
        double t = sv + y;
        cv = (t - sv) - y;
        sv = t;
        se += p.error;
    }
    value = sv;
    error = se;
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_subdivisions,
                                    const std::vector<double>& seeds) {
    if (!(b > a)) throw_domain(errc::invalid_argument, "integrate_adaptive: requires b > a");
    if (!(tol > 0.0)) throw_domain(errc::invalid_argument, "integrate_adaptive: tol must be > 0");

    std::vector<double> breaks{a};
    for (double s : seeds)
        if (s > a && s < b) breaks.push_back(s);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::priority_queue<Panel, std::vector<Panel>, decltype(&panel_worse)> heap(&panel_worse);
    std::vector<Panel> done;
    double total_v = 0.0, total_e = 0.0;
    auto push = [&](const Panel& p) {
        total_v += p.value;
        total_e += p.error;
        heap.push(p);
    };
    for (size_t i = 0; i + 1 < breaks.size(); ++i) push(eval_panel(f, breaks[i], breaks[i + 1]));

    int evals = static_cast<int>(breaks.size()) - 1;
    while (total_e > tol * std::max(std::abs(total_v), 1e-300)) {
        if (evals >= max_subdivisions)
            throw_numeric(errc::tolerance_not_met,
                          "integrate_adaptive: error " + std::to_string(total_e) +
                              " above tol after " + std::to_string(evals) + " panels");
        Panel worst = heap.top();
        heap.pop();
        total_v -= worst.value;
        total_e -= worst.error;
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at rounding resolution; accept its estimate as-is.
            done.push_back(worst);
            total_v += worst.value;
            total_e += worst.error;
            if (heap.empty()) break;
            continue;
        }
        push(eval_panel(f, worst.a, mid));
        push(eval_panel(f, mid, worst.b));
        ++evals;
    }

    while (!heap.empty()) {
        done.push_back(heap.top());
        heap.pop();
    }
    QuadratureResult r;
    reduce_panels(done, r.value, r.error_estimate);
    r.panels = static_cast<int>(done.size());
    r.upper_limit = b;
    return r;
}

namespace {

// log of the certified tail bound C int_T^inf tau^p e^{-a tau} dtau
//                               <= C T^p e^{-aT} * 2/a   (for T >= 2p/a).
double log_tail_bound(double C, double p, double a, double T) {
    if (C <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(C) + p * std::log(T) - a * T + std::log(2.0 / a);
}

double solve_truncation(double C, double p, double a, double T_min, double target) {
    // Fixed-point iteration on T = [ln(2C/a) + p ln T - ln target]/a; the
    // iteration is a contraction because only the slow p ln T term feeds back.
    if (C <= 0.0) return T_min;
    double log_target = std::log(target);
    double T = T_min;
    for (int i = 0; i < 8; ++i) {
        double next = (std::log(C) + std::log(2.0 / a) + p * std::log(T) - log_target) / a;
        T = std::max(T_min, next);
    }
    // Nudge upward until the bound actually clears the target.
    for (int i = 0; i < 60 && log_tail_bound(C, p, a, T) > log_target; ++i) T *= 1.25;
    return T;
}

std::vector<double> geometric_seeds(double from, double to) {
    std::vector<double> s;
    for (double b = 2.0 * std::max(from, 1e-8); b < to && s.size() < 64; b *= 2.0)
        s.push_back(b);
    return s;
}

} // namespace

QuadratureResult integrate_semi_infinite(const SemiInfiniteIntegrand& g, double tol,
                                         int max_subdivisions) {
    if (!(g.decay_rate > 0.0))
        throw_numeric(errc::divergence,
                      "integrate_semi_infinite: nonpositive decay rate (domain boundary reached)");
    if (!(g.power >= 0.0) || !(g.envelope_C >= 0.0) || !std::isfinite(g.envelope_C))
        throw_domain(errc::invalid_argument, "integrate_semi_infinite: bad envelope parameters");
    if (g.head_power < 1)
        throw_domain(errc::invalid_argument, "integrate_semi_infinite: head_power must be >= 1");

    const double a = g.decay_rate, p = g.power, C = g.envelope_C;
    const double T_min = std::max({g.T0, 2.0 * p / a, 1.0});

    // First pass: truncate against the envelope's own integral, evaluate
    // coarsely, then re-solve the truncation against the measured value.
    double log_env_total = (C > 0.0)
                               ? std::log(C) + std::lgamma(p + 1.0) - (p + 1.0) * std::log(a)
                               : 0.0;
    double T1 = solve_truncation(C, p, a, T_min,
                                 std::max(1e-300, 0.1 * tol * std::exp(std::min(600.0, log_env_total))));
    double coarse_tol = std::min(0.05, 1e3 * tol);
    QuadratureResult first =
        integrate_adaptive(g.f, 0.0, T1, coarse_tol, max_subdivisions, geometric_seeds(1.0, T1));
    if (first.value <= 0.0) {
        // Non-negative integrand that evaluates to zero everywhere we looked;
        // report zero with the tail bound as the uncertainty.
        QuadratureResult r;
        r.error_estimate = std::exp(std::min(600.0, log_tail_bound(C, p, a, T1)));
        r.panels = first.panels;
        r.upper_limit = T1;
        return r;
    }

    double T = solve_truncation(C, p, a, T_min, 0.5 * tol * first.value);
    double tail = std::exp(std::min(600.0, log_tail_bound(C, p, a, T)));

    // Final pass: smooth head segment (optionally under tau = y^k), then the
    // bulk, each to tol/2 relative to its own share.
    double head_value = 0.0, head_err = 0.0;
    int head_panels = 0;
    double H = std::min(1.0, T);
    if (g.head_power > 1) {
        int k = g.head_power;
        auto sub = [&](double y) { return g.f(std::pow(y, k)) * k * std::pow(y, k - 1); };
        QuadratureResult h =
            integrate_adaptive(sub, 0.0, std::pow(H, 1.0 / k), 0.5 * tol, max_subdivisions);
        head_value = h.value;
        head_err = h.error_estimate;
        head_panels = h.panels;
    } else {
        H = 0.0;  // no separate head; bulk covers [0, T]
    }
    QuadratureResult bulk = integrate_adaptive(g.f, H, T, 0.5 * tol, max_subdivisions,
                                               geometric_seeds(std::max(H, 1.0), T));

    QuadratureResult r;
    r.value = head_value + bulk.value;
    r.error_estimate = head_err + bulk.error_estimate + tail;
    r.panels = head_panels + bulk.panels;
    r.upper_limit = T;
    return r;
}

LatticeSeriesResult sum_lattice_series(int n,
                                       const std::function<double(const std::vector<int>&)>& term,
                                       double tol, long max_terms, int max_degree) {
    if (n < 1) throw_domain(errc::invalid_argument, "sum_lattice_series: n must be >= 1");
    if (!(tol > 0.0)) throw_domain(errc::invalid_argument, "sum_lattice_series: tol must be > 0");

    std::vector<int> nu(n, 0);
    long terms = 0;

    // Sum one graded shell |nu| = d, compensated.
    auto shell_sum = [&](int d) {
        double s = 0.0, comp = 0.0;
        auto add = [&](double x) {
            if (!(x >= 0.0))
                throw_domain(errc::invalid_argument, "sum_lattice_series: negative or NaN term");
            if (++terms > max_terms)
                throw_numeric(errc::budget_exhausted,
                              "sum_lattice_series: term budget exhausted at degree " +
                                  std::to_string(d));
            double y = x - comp;
            double t = s + y;
            comp = (t - s) - y;
            s = t;
        };
        // Odometer over compositions of d into n parts: decrement the
        // rightmost movable entry and gather the remainder just after it.
        std::fill(nu.begin(), nu.end(), 0);
        nu[0] = d;
        while (true) {
            add(term(nu));
            if (n == 1) break;
            int i = n - 2;
            while (i >= 0 && nu[i] == 0) --i;
            if (i < 0) break;
            --nu[i];
            int rest = d;
            for (int j = 0; j <= i; ++j) rest -= nu[j];
            nu[i + 1] = rest;
            for (int j = i + 2; j < n; ++j) nu[j] = 0;
        }
        return s;
    };

    double total = 0.0, comp = 0.0;
    auto accumulate = [&](double x) {
        double y = x - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
    };

    std::deque<double> ratios;
    double prev_shell = -1.0;
    double last_ratio = 2.0;
    for (int d = 0; d <= max_degree; ++d) {
        double A = shell_sum(d);
        accumulate(A);
        if (prev_shell > 0.0) {
            last_ratio = A / prev_shell;
            ratios.push_back(last_ratio);
            if (ratios.size() > 3) ratios.pop_front();
        }
        if (A == 0.0 && prev_shell == 0.0 && d >= 2) {
            // Two successive empty shells: with log-concave axis profiles
            // nothing nonzero can follow.
            return {total, 0.0, terms, d};
        }
        prev_shell = A;
        if (ratios.size() == 3) {
            double qhat = std::max({ratios[0], ratios[1], ratios[2]});
            bool settled = qhat < 1.0 && ratios[2] <= ratios[1] * 1.02 && ratios[1] <= ratios[0] * 1.02;
            if (settled) {
                double tail = A * qhat / (1.0 - qhat);
                if (tail <= tol * std::max(total, 1e-300)) return {total, tail, terms, d};
            }
        }
    }
    if (last_ratio >= 0.999)
        throw_numeric(errc::divergence,
                      "sum_lattice_series: shell ratios failed to drop below 1 "
                      "(point too close to the domain boundary for the budget)");
    throw_numeric(errc::budget_exhausted,
                  "sum_lattice_series: budget exhausted before the tail bound cleared tol (" +
                      std::to_string(terms) + " terms)");
}

} // namespace eggkernel::quad
