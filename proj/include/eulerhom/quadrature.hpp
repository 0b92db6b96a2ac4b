#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace eulerhom {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
    bool ok = false;     // error estimate met the requested relative tolerance
};

// Globally adaptive Gauss-Kronrod: Boost supplies the 31-point rule on each
// panel, the worst panel is bisected until the summed absolute error estimate
// is below tol * |value|. Boost's own recursion compares an unscaled panel
// error with a scaled tolerance and never terminates on narrow panels.
template <class F>
QuadResult integrate_gk(F f, double a, double b, double tol, unsigned max_panels = 4000) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto eval = [&](double lo, double hi) {
        double err = 0.0;
        const double v = GK::integrate(f, lo, hi, 0, 0.0, &err);
        return Panel{lo, hi, v, err * 0.5 * (hi - lo)};
    };
    std::priority_queue<Panel> q;
    Panel first = eval(a, b);
    double total = first.value, total_err = first.error;
    q.push(first);
    const double floor = 50.0 * std::numeric_limits<double>::epsilon();
    while (q.size() < max_panels) {
        if (total_err <= std::max(tol, floor) * std::fabs(total)) break;
        Panel w = q.top();
        const double mid = 0.5 * (w.a + w.b);
        if (!(mid > w.a && mid < w.b)) break;
        q.pop();
        const Panel l = eval(w.a, mid), r = eval(mid, w.b);
        total += l.value + r.value - w.value;
        total_err += l.error + r.error - w.error;
        q.push(l);
        q.push(r);
    }
    // re-sum to shed accumulated cancellation in the running totals
    double v = 0.0, e = 0.0;
    while (!q.empty()) {
        v += q.top().value;
        e += q.top().error;
        q.pop();
    }
    QuadResult res;
    res.value = v;
    res.error = e;
    res.ok = std::isfinite(v) && e <= 2.0 * std::max(tol, floor) * std::fabs(v);
    return res;
}

// Tanh-sinh with a two-argument integrand f(x, xc), where xc is the signed
// distance to the nearest endpoint (a - x on the left half, b - x on the right).
template <class F>
QuadResult integrate_ts(F f, double a, double b, double tol) {
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    const double v = ts.integrate(f, a, b, tol, &err, &l1, &levels);
    QuadResult r;
    r.value = v;
    // Boost's estimate lives on the internal [-1, 1] variable
    r.error = err * 0.5 * (b - a);
    r.ok = std::isfinite(v) && r.error <= std::max(tol, 1e2 * std::numeric_limits<double>::epsilon()) * l1;
    return r;
}

// [a, b] with extra breakpoints clustered geometrically near a when the
// integrand has a feature of width w there.
inline std::vector<double> graded_breakpoints(double a, double b, double w) {
    std::vector<double> pts{a};
    const double L = b - a;
    if (w > 0.0 && w < 1e-3 * L) {
        for (double x = 1e-3 * w; x < 0.1 * L; x *= 10.0) pts.push_back(a + x);
    }
    pts.push_back(b);
    return pts;
}

template <class F>
QuadResult integrate_graded(F f, double a, double b, double w, double tol) {
    const std::vector<double> pts = graded_breakpoints(a, b, w);
    QuadResult tot;
    tot.ok = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const QuadResult r = integrate_gk(f, pts[i], pts[i + 1], tol);
        tot.value += r.value;
        tot.error += r.error;
        tot.ok = tot.ok && r.ok;
    }
    return tot;
}

}  // namespace eulerhom
