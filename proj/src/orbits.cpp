#include "eulerhom/orbits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "eulerhom/errors.hpp"

namespace eulerhom {

namespace {

constexpr double kDecadeStep = 1.0 / 64.0;  // 64 grid points per decade

double g_of(const FlowParams& p, double x) {
    double g = p.lambda * p.lambda * x * x + 2.0 * p.P;
    if (p.B != 0.0) g -= p.B * real_pow(x, p.a());
    return g;
}

double dg_of(const FlowParams& p, double x) {
    double d = 2.0 * p.lambda * p.lambda * x;
    if (p.B != 0.0) d -= p.a() * p.B * real_pow(x, p.a() - 1.0);
    return d;
}

// Walk geometrically from x (64 points per decade) in direction dir until
// g changes sign relative to g(x). Returns the bracket ordered as (lo, hi).
std::pair<double, double> walk_to_sign_change(const FlowParams& p, double x, int dir, double x_lo,
                                              double x_hi) {
    const double f = std::pow(10.0, kDecadeStep);
    const double s0 = g_of(p, x) > 0.0 ? 1.0 : -1.0;
    double prev = x;
    // first stay inside the nominal window, then keep going to the hard limits
    for (int pass = 0; pass < 2; ++pass) {
        const double lim = pass == 0 ? (dir > 0 ? x_hi : x_lo) : (dir > 0 ? 1e300 : 1e-300);
        while (dir > 0 ? prev < lim : prev > lim) {
            const double nx = dir > 0 ? prev * f : prev / f;
            const double gv = g_of(p, nx);
            if (!std::isfinite(gv)) break;
            if ((gv > 0.0 ? 1.0 : -1.0) != s0 || gv == 0.0)
                return dir > 0 ? std::make_pair(prev, nx) : std::make_pair(nx, prev);
            prev = nx;
        }
    }
    std::ostringstream os;
    os << "no sign change of the level function for lambda=" << p.lambda << " P=" << p.P << " B=" << p.B;
    fail(ErrorKind::NoBracket, os.str());
}

double refine_root(const FlowParams& p, double lo, double hi) {
    double glo = g_of(p, lo);
    if (glo == 0.0) return lo;
    if (g_of(p, hi) == 0.0) return hi;
    // bisection in log space down to a narrow bracket
    for (int i = 0; i < 200 && hi / lo - 1.0 > 1e-6; ++i) {
        const double mid = std::sqrt(lo * hi);
        const double gm = g_of(p, mid);
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    // safeguarded Newton inside the bracket
    auto fn = [&](double x) { return std::make_pair(g_of(p, x), dg_of(p, x)); };
    std::uintmax_t iters = 100;
    const double guess = 0.5 * (lo + hi);
    double r = boost::math::tools::newton_raphson_iterate(fn, guess, lo, hi, 50, iters);
    return r;
}

std::vector<double> scale_candidates(const FlowParams& p) {
    std::vector<double> c;
    const double l2 = p.lambda * p.lambda;
    if (p.B != 0.0 && p.lambda != 1.0) c.push_back(real_pow(std::fabs(p.B) / l2, 0.5 * p.lambda));
    if (p.P != 0.0) c.push_back(std::sqrt(2.0 * std::fabs(p.P)) / p.lambda);
    if (p.P != 0.0 && p.B != 0.0 && p.lambda != 1.0)
        c.push_back(real_pow(2.0 * std::fabs(p.P) / std::fabs(p.B), 1.0 / p.a()));
    if (c.empty()) c.push_back(1.0);
    return c;
}

bool near_center(const FlowParams& p, double Pc) {
    return std::fabs(p.P - Pc) <= 1e-13 * std::fabs(Pc);
}

}  // namespace

double level_function(const FlowParams& p, double x) { return g_of(p, x); }
double level_function_derivative(const FlowParams& p, double x) { return dg_of(p, x); }

Intercepts find_intercepts(const FlowParams& p) {
    Intercepts out;
    const double lam = p.lambda;
    auto cands = scale_candidates(p);
    const double smin = *std::min_element(cands.begin(), cands.end());
    const double smax = *std::max_element(cands.begin(), cands.end());
    const double x_lo = 1e-8 * smin, x_hi = 1e3 * smax;

    if (lam == 1.0) {
        // g = x^2 - B + 2P
        if (p.B - 2.0 * p.P > 0.0) {
            out.kind = InterceptKind::HyperbolicSingle;
            out.x0 = std::sqrt(p.B - 2.0 * p.P);
        }
        return out;
    }
    if (p.B == 0.0) {
        if (p.P < 0.0) {
            out.kind = InterceptKind::HyperbolicSingle;
            out.x0 = std::sqrt(-2.0 * p.P) / lam;
        }
        return out;
    }

    const bool has_center = (lam - 1.0) * p.B > 0.0;
    if (has_center) {
        const SteadyStateInfo c = center(lam, p.B);
        if (near_center(p, c.P_max)) {
            out.kind = InterceptKind::Center;
            out.x0 = c.x_s;
            return out;
        }
        if (p.P > c.P_max) {
            if (lam > 1.0) {
                std::ostringstream os;
                os << "P=" << p.P << " exceeds P_max=" << c.P_max;
                fail(ErrorKind::DomainError, os.str());
            }
            return out;  // lambda < 1, B < 0: level set void above the center
        }
        const auto up = walk_to_sign_change(p, c.x_s, +1, x_lo, x_hi);
        const double x_up = refine_root(p, up.first, up.second);
        const bool closed = lam > 1.0 ? p.P > 0.0 : true;
        if (!closed) {
            out.kind = InterceptKind::HyperbolicSingle;
            out.x0 = x_up;
            return out;
        }
        const auto dn = walk_to_sign_change(p, c.x_s, -1, x_lo, x_hi);
        out.kind = InterceptKind::EllipticPair;
        out.x0 = refine_root(p, dn.first, dn.second);
        out.x1 = x_up;
        return out;
    }

    // no center: g is monotone increasing whenever an arch exists
    const bool arch = lam > 1.0 ? p.P < 0.0 : p.B > 0.0;
    if (!arch) return out;
    double x = smax;
    int dir = g_of(p, x) < 0.0 ? +1 : -1;
    const auto br = walk_to_sign_change(p, x, dir, x_lo, x_hi);
    out.kind = InterceptKind::HyperbolicSingle;
    out.x0 = refine_root(p, br.first, br.second);
    return out;
}

namespace {

using State = std::array<double, 2>;

struct Rhs {
    double lambda;
    double c;  // (lambda - 1) B / lambda
    double e;  // (lambda - 2) / lambda
    double x_floor;
    void operator()(const State& s, State& d, double) const {
        d[0] = s[1];
        double dy = -lambda * lambda * s[0];
        if (c != 0.0) {
            // even extension past the axis; below x_floor the orbit is rejected anyway
            const double ax = std::max(std::fabs(s[0]), x_floor);
            dy += c * std::exp(e * std::log(ax));
        }
        d[1] = dy;
    }
};

struct EventSpec {
    StopKind kind;
    double xs, ys, fx, fy;
    double t_fixed;
    bool from_axis;
    double value(const State& s) const {
        if (kind == StopKind::ReturnToAxis) return s[0];
        return (s[0] - xs) * fx + (s[1] - ys) * fy;
    }
};

}  // namespace

Orbit integrate_orbit(const FlowParams& p, const PhaseState& start, const StopCondition& stop,
                      const OdeOptions& opt) {
    namespace odeint = boost::numeric::odeint;
    const double lam = p.lambda;
    const bool singular_axis = lam < 2.0 && p.B != 0.0 && lam != 1.0;
    if (start.x == 0.0 && singular_axis)
        fail(ErrorKind::SingularEndpoint, "cannot start on the axis when lambda < 2 and B != 0");
    if (start.x < opt.x_min && singular_axis)
        fail(ErrorKind::SingularEndpoint, "start below x_min near the singular axis");

    const double H0 = pressure_hamiltonian(start, lam, p.B);
    {
        double mag = std::fabs(p.P) + 0.5 * start.y * start.y + 0.5 * lam * lam * start.x * start.x;
        if (p.B != 0.0 && start.x > 0.0) mag += 0.5 * std::fabs(p.B) * real_pow(start.x, p.a());
        if (std::fabs(H0 - p.P) > 1e-10 * std::max(mag, 1e-300)) {
            std::ostringstream os;
            os << "start is not on the level set: H=" << H0 << " P=" << p.P;
            fail(ErrorKind::DomainError, os.str());
        }
    }

    const auto f0 = phase_vector_field(start, lam, p.B);
    const bool steady = f0.first == 0.0 && std::fabs(f0.second) <= 1e-13 * (lam * lam * start.x + 1e-300);
    EventSpec ev{stop.kind, start.x, start.y, f0.first, f0.second, stop.t, false};
    if (stop.kind == StopKind::ReturnToAxis) {
        if (find_intercepts(p).kind != InterceptKind::HyperbolicSingle)
            fail(ErrorKind::DomainError, "ReturnToAxis needs an orbit that reaches the axis");
        if (start.x == 0.0) {
            if (!(start.y > 0.0)) fail(ErrorKind::DomainError, "axis start needs y > 0");
            ev.from_axis = true;
        } else if (start.y != 0.0) {
            fail(ErrorKind::DomainError, "ReturnToAxis starts at the apex (y = 0) or on the axis");
        }
    } else if (stop.kind == StopKind::ReturnToStart) {
        if (steady) fail(ErrorKind::SteadyStateError, "start is a fixed point; no return time");
    } else if (!(stop.t >= 0.0)) {
        fail(ErrorKind::DomainError, "FixedTime needs t >= 0");
    }

    Rhs rhs{lam, (lam - 1.0) / lam * p.B, (lam - 2.0) / lam, 1e-3 * opt.x_min};
    double scale = std::max({std::fabs(start.x), std::fabs(start.y), std::sqrt(2.0 * std::fabs(p.P)) / lam});
    if (!(scale > 0.0)) scale = 1.0;
    const double atol = opt.rtol * scale;

    auto make = [&]() { return odeint::bulirsch_stoer_dense_out<State>(atol, opt.rtol); };

    // first pass: locate the event time
    auto run = [&](double t_end, auto&& on_step) {
        auto st = make();
        State s0{start.x, start.y};
        st.initialize(s0, 0.0, std::min(1e-3, std::max(t_end, 1e-6) * 1e-3));
        while (true) {
            std::pair<double, double> iv;
            try {
                iv = st.do_step(rhs);
            } catch (const odeint::odeint_error& e) {
                fail(ErrorKind::StepFailure, e.what());
            }
            const State& cur = st.current_state();
            if (!std::isfinite(cur[0]) || !std::isfinite(cur[1]))
                fail(ErrorKind::StepFailure, "non-finite state");
            if (st.current_time_step() < opt.dt_floor)
                fail(ErrorKind::StepFailure, "step size fell below the floor");
            if (on_step(st, iv.first, iv.second)) return;
            if (iv.second > opt.t_max) fail(ErrorKind::StepFailure, "no event before t_max");
        }
    };

    double t_event = 0.0;
    if (stop.kind == StopKind::FixedTime) {
        t_event = stop.t;
    } else {
        double prev = ev.value(State{start.x, start.y});
        bool armed = stop.kind == StopKind::ReturnToStart ? false : true;
        bool left_axis = !ev.from_axis;
        run(opt.t_max, [&](auto& st, double t0, double t1) {
            const State& cur = st.current_state();
            if (singular_axis && cur[0] < opt.x_min)
                fail(ErrorKind::SingularEndpoint, "orbit entered x < x_min where the vector field is singular");
            const double v = ev.value(cur);
            bool hit = false;
            if (stop.kind == StopKind::ReturnToAxis) {
                if (!left_axis) {
                    left_axis = v > 0.0;
                } else if (v <= 0.0) {
                    hit = true;
                }
            } else {
                if (!armed) armed = v < 0.0;
                else if (prev < 0.0 && v >= 0.0) hit = true;
            }
            prev = v;
            if (!hit) return false;
            double a = t0, b = t1;
            State tmp;
            while (b - a > opt.event_tol) {
                const double m = 0.5 * (a + b);
                st.calc_state(m, tmp);
                const double vm = ev.value(tmp);
                const bool after = stop.kind == StopKind::ReturnToAxis ? vm <= 0.0 : vm >= 0.0;
                if (after) b = m;
                else a = m;
            }
            t_event = 0.5 * (a + b);
            return true;
        });
    }

    // second pass: uniform samples on [0, t_event] (or on the half arch)
    const bool mirror = stop.kind == StopKind::ReturnToAxis && !ev.from_axis;
    const double t_len = t_event;
    int n;
    if (mirror) {
        int half = std::max(opt.min_intervals / 2, static_cast<int>(std::ceil(t_len / opt.max_spacing)));
        half += half % 2;
        n = half;
    } else {
        n = std::max(opt.min_intervals, static_cast<int>(std::ceil(t_len / opt.max_spacing)));
        n = (n + 3) / 4 * 4;
    }
    std::vector<State> grid(n + 1);
    grid[0] = State{start.x, start.y};
    if (t_len > 0.0) {
        // controlled steps land on every sample time, so samples carry the
        // step accuracy rather than that of the dense-output interpolant
        std::vector<double> times(n + 1);
        for (int j = 0; j <= n; ++j) times[j] = t_len * j / n;
        State s{start.x, start.y};
        std::size_t idx = 0;
        try {
            odeint::integrate_times(odeint::bulirsch_stoer<State>(atol, opt.rtol), rhs, s, times.begin(), times.end(),
                                    std::min(1e-3, t_len / n), [&](const State& x, double) { grid[idx++] = x; });
        } catch (const odeint::odeint_error& e) {
            fail(ErrorKind::StepFailure, e.what());
        }
        if (idx != grid.size()) fail(ErrorKind::StepFailure, "sampling pass ended early");
    } else {
        for (auto& g : grid) g = grid[0];
    }

    Orbit o{p, {}, false, 0.0, stop.kind};
    auto push = [&](double t, double x, double y) {
        o.samples.push_back({t, PhaseState(std::max(x, 0.0), y)});
    };
    if (stop.kind == StopKind::ReturnToAxis) {
        o.measured_span = mirror ? 2.0 * t_len : t_len;
        if (mirror) {
            // axis -> apex is the time reversal of the computed apex -> axis leg
            for (int j = n; j >= 0; --j) push(t_len - t_len * j / n, grid[j][0], -grid[j][1]);
            for (int j = 1; j <= n; ++j) push(t_len + t_len * j / n, grid[j][0], grid[j][1]);
        } else {
            for (int j = 0; j <= n; ++j) push(t_len * j / n, grid[j][0], grid[j][1]);
        }
        // on the axis the level set fixes |y| exactly; the field is not
        // smooth there, so the last step is the least accurate one
        const double y2 = -2.0 * p.P + (p.B == 0.0 ? 0.0 : p.B * real_pow(0.0, p.a()));
        for (OrbitSample* e : {&o.samples.front(), &o.samples.back()}) {
            e->s.x = 0.0;
            if (y2 > 0.0) e->s.y = std::copysign(std::sqrt(y2), e->s.y);
        }
    } else {
        for (int j = 0; j <= n; ++j) push(t_len * j / n, grid[j][0], grid[j][1]);
        o.measured_span = t_len;
        o.closed = stop.kind == StopKind::ReturnToStart;
    }
    return o;
}

std::vector<ProfilePoint> reconstruct_profile(const Orbit& o) {
    if (!o.closed && o.stop != StopKind::ReturnToAxis)
        fail(ErrorKind::DomainError, "profile reconstruction needs a closed orbit or a full arch");
    std::vector<ProfilePoint> out;
    out.reserve(o.samples.size());
    const double t0 = o.samples.empty() ? 0.0 : o.samples.front().t;
    for (const auto& s : o.samples) out.push_back({s.t - t0, s.s.x, s.s.y});
    return out;
}

}  // namespace eulerhom
