#include "eulerhom/assemble.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "eulerhom/classify.hpp"
#include "eulerhom/errors.hpp"
#include "eulerhom/periods.hpp"

namespace eulerhom {

const char* smoothness_name(Smoothness s) {
    switch (s) {
    case Smoothness::C1: return "C1";
    case Smoothness::VortexSheet: return "VortexSheet";
    case Smoothness::CuspEndpoints: return "CuspEndpoints";
    }
    return "?";
}

std::vector<std::vector<ProfilePoint>> GlobalSolution::segments() const {
    std::vector<std::vector<ProfilePoint>> out;
    for (const Piece& pc : pieces) {
        std::vector<ProfilePoint> seg;
        seg.reserve(pc.arc.profile.size());
        for (const ProfilePoint& q : pc.arc.profile)
            seg.push_back({pc.offset + q.theta, pc.sign * q.psi, pc.sign * q.dpsi});
        out.push_back(std::move(seg));
    }
    return out;
}

std::vector<Segment> GlobalSolution::local_segments() const {
    std::vector<Segment> out;
    for (const Piece& pc : pieces) {
        Segment s{pc.offset, {}};
        s.local.reserve(pc.arc.profile.size());
        for (const ProfilePoint& q : pc.arc.profile) s.local.push_back({q.theta, pc.sign * q.psi, pc.sign * q.dpsi});
        out.push_back(std::move(s));
    }
    return out;
}

double GlobalSolution::total_span() const {
    double s = 0.0;
    for (const Piece& pc : pieces) s += pc.arc.span;
    return s;
}

namespace {

double wrap(double t) {
    double w = std::fmod(t, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

Smoothness classify_junctions(const std::vector<Piece>& pieces) {
    for (const Piece& pc : pieces)
        if (std::isinf(pc.arc.endpoint_slope)) return Smoothness::CuspEndpoints;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& a = pieces[i];
        const Piece& b = pieces[(i + 1) % pieces.size()];
        if (a.arc.type.tag == SolutionTag::Elliptic || a.arc.endpoint_slope == 0.0) continue;
        // outgoing slope of a is -sign_a s, incoming slope of b is sign_b s
        if (a.sign == b.sign) return Smoothness::VortexSheet;
    }
    return Smoothness::C1;
}

void check_admissible(double lam, double P, double B) {
    std::ostringstream os;
    os << "(lambda=" << lam << ", P=" << P << ", B=" << B << ") ";
    if (lam <= 0.5) fail(ErrorKind::InadmissibleArc, os.str() + "has no hyperbolic H1 arcs for lambda <= 1/2");
    if (lam > 1.0 && P > 0.0) fail(ErrorKind::InadmissibleArc, os.str() + "has no hyperbolic arcs: lambda > 1 needs P <= 0");
    if (lam < 1.0 && B < 0.0) fail(ErrorKind::InadmissibleArc, os.str() + "is elliptic: lambda < 1 arcs need B >= 0");
    try {
        (void)hyperbolic_shape(FlowParams(lam, P, B));
    } catch (const Error& e) {
        if (e.category() == ErrorCategory::Numerical) throw;
        fail(ErrorKind::InadmissibleArc, os.str() + e.what());
    }
}

}  // namespace

GlobalSolution stitch(double lam, double P, const std::vector<ArcSpec>& specs_in, const StitchOptions& opt) {
    if (specs_in.empty()) fail(ErrorKind::DomainError, "stitch needs at least one arc");
    if (specs_in.size() > opt.max_pieces) fail(ErrorKind::DomainError, "too many arcs for the configured cap");
    std::vector<ArcSpec> specs = specs_in;
    for (const ArcSpec& s : specs) {
        if (s.sign != 1 && s.sign != -1) fail(ErrorKind::DomainError, "arc signs must be +1 or -1");
        check_admissible(lam, P, s.B);
    }
    std::vector<double> spans;
    double sum = 0.0;
    for (const ArcSpec& s : specs) {
        spans.push_back(span_any(FlowParams(lam, P, s.B), opt.solve.span).T);
        sum += spans.back();
    }
    double gap = sum - kTwoPi;
    if (std::fabs(gap) > opt.tol) {
        std::ostringstream os;
        os << "spans sum to " << std::setprecision(17) << sum << ", off 2 pi by " << gap;
        if (!opt.auto_repair) throw SpanMismatchError(gap, os.str());
        const double want = spans.back() - gap;
        try {
            specs.back().B = solve_hyperbolic_span_at(lam, P, want, 64, opt.solve).B_star;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OutOfRange) throw;
            throw SpanMismatchError(gap, os.str() + "; repair impossible: " + e.what());
        }
        spans.back() = span_any(FlowParams(lam, P, specs.back().B), opt.solve.span).T;
        gap = 0.0;
        for (double t : spans) gap += t;
        gap -= kTwoPi;
        if (std::fabs(gap) > opt.tol) throw SpanMismatchError(gap, "repair left a span gap");
    }
    GlobalSolution g;
    g.lambda = lam;
    g.P = P;
    double at = opt.offset;
    for (const ArcSpec& s : specs) {
        Piece pc{make_hyperbolic_arc(FlowParams(lam, P, s.B), opt.points_per_arc), s.sign, wrap(at)};
        at += pc.arc.span;
        g.pieces.push_back(std::move(pc));
    }
    g.smoothness = classify_junctions(g.pieces);
    return g;
}

GlobalSolution equal_arcs(double lam, double P, int m, const StitchOptions& opt) {
    if (m < 1) fail(ErrorKind::DomainError, "need at least one arc");
    const double target = kTwoPi / m;
    double B = 0.0;
    if (P == 0.0 || lam == 1.0) {
        // shear arcs all have span pi
        if (std::fabs(target - kPi) > opt.tol) {
            std::ostringstream os;
            os << m << " arcs of span pi cannot tile 2 pi";
            throw SpanMismatchError(m * kPi - kTwoPi, os.str());
        }
        B = lam == 1.0 ? 2.0 * P + 1.0 : lam * lam;
    } else {
        if (lam <= 0.5 || (lam > 1.0 && P > 0.0)) check_admissible(lam, P, 1.0);
        try {
            B = solve_hyperbolic_span_at(lam, P, target, 64, opt.solve).B_star;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OutOfRange) throw;
            // the admissible spans form an open interval with supremum pi
            std::ostringstream os;
            os << m << " equal arcs need span " << target << ", outside the open range of life-spans (" << e.what()
               << ")";
            throw SpanMismatchError(m * kPi - kTwoPi, os.str());
        }
    }
    std::vector<ArcSpec> specs;
    for (int i = 0; i < m; ++i) specs.push_back({B, i % 2 == 0 ? 1 : -1});
    return stitch(lam, P, specs, opt);
}

GlobalSolution elliptic_global(const LocalArc& period, int n, double offset) {
    if (n < 1) fail(ErrorKind::DomainError, "need at least one period");
    if (std::fabs(n * period.span - kTwoPi) > 1e-8) {
        std::ostringstream os;
        os << n << " periods of " << period.span << " do not fill 2 pi";
        throw SpanMismatchError(n * period.span - kTwoPi, os.str());
    }
    GlobalSolution g;
    g.lambda = period.params.lambda;
    g.P = period.params.P;
    for (int k = 0; k < n; ++k) g.pieces.push_back({period, 1, wrap(offset + k * period.span)});
    g.smoothness = Smoothness::C1;
    return g;
}

GlobalSolution family_global(const ExplicitFamily& f, int n_intervals) {
    if (f.kind != FamilyKind::Rotational && f.kind != FamilyKind::Lambda2 && f.kind != FamilyKind::LambdaHalf)
        fail(ErrorKind::DomainError, "family is not a single 2 pi piece");
    GlobalSolution g;
    g.lambda = f.params.lambda;
    g.P = f.params.P;
    g.pieces.push_back({make_family_arc(f, n_intervals), 1, 0.0});
    g.smoothness = Smoothness::C1;
    return g;
}

namespace {

// Integrals of F(point) dtheta over one arc. Each half is integrated by
// tanh-sinh in u with theta = (T/2) u^k measured from its own end; at a cusp
// k = 1/(2 lambda - 1) makes psi'^2 dtheta bounded. Shape evaluations are
// shared between the M components.
template <std::size_t M, class F>
std::array<double, M> arc_integrals(const LocalArc& arc, F&& f, double tol = 1e-12) {
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    const ArcShape& s = *arc.shape;
    const double H = 0.5 * s.span(), lam = arc.params.lambda;
    const bool cusp = !std::isfinite(arc.endpoint_slope) && lam > 0.5 && lam < 1.0;
    const double k = cusp ? 1.0 / (2.0 * lam - 1.0) : 1.0;
    std::array<double, M> out{};
    for (int side = 0; side < 2; ++side) {
        std::unordered_map<double, std::array<double, M>> cache;
        auto eval = [&](double u) -> const std::array<double, M>& {
            auto it = cache.find(u);
            if (it != cache.end()) return it->second;
            std::array<double, M> v{};
            const double t = H * std::pow(u, k), dt = H * k * std::pow(u, k - 1.0);
            // below the underflow of t the bounded integrand has no weight left
            if (t > 0.0 && dt > 0.0 && std::isfinite(dt)) {
                v = f(side == 0 ? s.at(t) : s.at_from_end(t));
                bool finite = true;
                for (double& x : v) finite = finite && std::isfinite(x *= dt);
                if (!finite) v.fill(0.0);
            }
            return cache.emplace(u, v).first->second;
        };
        for (std::size_t m = 0; m < M; ++m) out[m] += ts.integrate([&](double u) { return eval(u)[m]; }, 0.0, 1.0, tol);
    }
    return out;
}

}  // namespace

std::vector<double> weak_residual(const GlobalSolution& g) {
    const double lam = g.lambda, q = lam - 1.0;
    std::vector<double> w(kWeakModes, 0.0);
    for (const Piece& pc : g.pieces) {
        const double off = pc.offset, sg = pc.sign;
        const auto v = arc_integrals<kWeakModes>(pc.arc, [&](const ProfilePoint& p) {
            std::array<double, kWeakModes> r;
            const double psi = sg * p.psi, d = sg * p.dpsi, th = off + p.theta;
            const double base = -(2.0 * lam - 1.0) * d * d + lam * lam * psi * psi;
            for (int m = 0; m < kWeakModes; ++m)
                r[m] = base * test_function(m, th) - lam * psi * d * test_function_derivative(m, th);
            return r;
        });
        for (int m = 0; m < kWeakModes; ++m)
            w[m] += v[m] - 2.0 * q * g.P * test_function_integral(m, off, off + pc.arc.span);
    }
    return w;
}

Residual solution_residual(const GlobalSolution& g) {
    Residual r = ode_residual(g.local_segments(), g.lambda, g.P);
    r.weak = weak_residual(g);
    return r;
}

Residual sampled_residual(const GlobalSolution& g) { return ode_residual(g.local_segments(), g.lambda, g.P); }

Flux energy_flux(const GlobalSolution& g) {
    Flux f;
    double l2 = 0.0;
    for (const Piece& pc : g.pieces) {
        const auto& pr = pc.arc.profile;
        const std::size_t n = pr.size();
        const std::vector<double> w = index_weights(n);
        const std::vector<double> J = index_jacobian(pr);
        const double T = pr.back().theta + pr.front().theta;
        auto cube = [](double d) { return d * d * d; };
        // pair j with its mirror so the odd symmetry of psi' cancels in pairs;
        // mirrored nodes share the left-half Jacobian, which is free of the
        // rounding that theta suffers near the right end
        for (std::size_t j = 0; 2 * j + 1 < n; ++j) {
            const std::size_t k = n - 1 - j;
            if (!std::isfinite(pr[j].dpsi) || !std::isfinite(pr[k].dpsi)) continue;
            const bool mirrored = std::fabs(pr[j].theta + pr[k].theta - T) <= 1e-12 * std::fabs(T);
            const double Jk = mirrored ? J[j] : J[k];
            f.flux += pc.sign * (w[j] * J[j] * cube(pr[j].dpsi) + w[k] * Jk * cube(pr[k].dpsi));
        }
        if (n % 2 == 1 && std::isfinite(pr[n / 2].dpsi)) f.flux += pc.sign * w[n / 2] * J[n / 2] * cube(pr[n / 2].dpsi);
        l2 += arc_integrals<1>(pc.arc, [](const ProfilePoint& q) { return std::array<double, 1>{q.dpsi * q.dpsi}; })[0];
    }
    f.scale = std::pow(l2, 1.5);
    f.scaled = f.scale > 0.0 ? std::fabs(f.flux) / f.scale : std::fabs(f.flux);
    return f;
}

GlobalSolution corrupt_piece(const GlobalSolution& g, std::size_t i, double power) {
    if (i >= g.pieces.size()) fail(ErrorKind::DomainError, "no such piece");
    GlobalSolution c = g;
    LocalArc& arc = c.pieces[i].arc;
    const double T = arc.span;
    for (ProfilePoint& q : arc.profile) {
        const double s = q.theta / T;
        const ProfilePoint v = arc.shape->at(T * std::pow(s, power));
        q.psi = v.psi;
        q.dpsi = v.dpsi * power * std::pow(s, power - 1.0);
    }
    arc.shape = sampled_shape(arc.profile, false);
    return c;
}

double h1_norm(const GlobalSolution& g) {
    double s = 0.0;
    for (const Piece& pc : g.pieces)
        s += arc_integrals<1>(pc.arc, [](const ProfilePoint& q) { return std::array<double, 1>{q.psi * q.psi + q.dpsi * q.dpsi}; })[0];
    return std::sqrt(s);
}

double profile_h1_norm(const GlobalSolution& g) {
    double s = 0.0;
    for (const Segment& seg : g.local_segments())
        s += segment_integral(seg.local, [](const ProfilePoint& q) { return q.psi * q.psi + q.dpsi * q.dpsi; });
    return std::sqrt(s);
}

FieldSample field_at(const GlobalSolution& g, double r, double theta) {
    if (!(r > 0.0)) fail(ErrorKind::DomainError, "field evaluation needs r > 0");
    if (g.pieces.empty()) fail(ErrorKind::DomainError, "empty solution");
    const double t = wrap(theta);
    const Piece* hit = nullptr;
    double local = 0.0;
    for (const Piece& pc : g.pieces) {
        const double u = wrap(t - pc.offset);
        if (u < pc.arc.span || (pc.arc.span >= kTwoPi - 1e-12)) {
            hit = &pc;
            local = u;
            break;
        }
    }
    if (!hit) {
        // rounding gap at the last junction
        hit = &g.pieces.front();
        local = 0.0;
    }
    const double T = hit->arc.span;
    const bool hyperbolic_ends = hit->arc.type.tag != SolutionTag::Elliptic && T < kTwoPi - 1e-12;
    if (g.smoothness == Smoothness::CuspEndpoints && hyperbolic_ends && (local < 1e-12 || T - local < 1e-12))
        fail(ErrorKind::OnSingularRay, "theta lies on a junction ray with infinite slope");

    const FlowParams& p = hit->arc.params;
    const double lam = p.lambda;
    const ProfilePoint q = hit->arc.shape->at(local);
    const double sg = hit->sign;
    const double psi = sg * q.psi, dpsi = sg * q.dpsi;
    double lap;  // lambda^2 psi + psi''
    if (q.psi > 0.0) {
        const double d2 = (2.0 * (lam - 1.0) * p.P + (lam - 1.0) * q.dpsi * q.dpsi - lam * lam * q.psi * q.psi) /
                          (lam * q.psi);
        lap = sg * (lam * lam * q.psi + d2);
    } else {
        // limit of ((lambda-1)/lambda) B psi^(1-2/lambda) at psi = 0
        const double c = (lam - 1.0) / lam * p.B;
        if (c == 0.0 || lam > 2.0) lap = 0.0;
        else if (lam == 2.0) lap = sg * c;
        else lap = sg * std::copysign(std::numeric_limits<double>::infinity(), c);
    }
    FieldSample s;
    s.r = r;
    s.theta = theta;
    s.x = r * std::cos(theta);
    s.y = r * std::sin(theta);
    const double rq = std::pow(r, lam - 1.0);
    s.u_tau = lam * psi * rq;
    s.u_nu = -dpsi * rq;
    s.u_x = -s.u_tau * std::sin(theta) + s.u_nu * std::cos(theta);
    s.u_y = s.u_tau * std::cos(theta) + s.u_nu * std::sin(theta);
    s.psi = psi;
    s.stream = std::pow(r, lam) * psi;
    s.vorticity = std::pow(r, lam - 2.0) * lap;
    s.pressure = std::pow(r, 2.0 * lam - 2.0) * g.P;
    return s;
}

FieldSample field_at(const PointVortexField& v, double r, double theta) {
    if (!(r > 0.0)) fail(ErrorKind::DomainError, "field evaluation needs r > 0");
    FieldSample s;
    s.r = r;
    s.theta = theta;
    s.x = r * std::cos(theta);
    s.y = r * std::sin(theta);
    s.u_tau = v.u_tau(r);
    s.u_nu = v.u_nu(r);
    s.u_x = -s.u_tau * std::sin(theta) + s.u_nu * std::cos(theta);
    s.u_y = s.u_tau * std::cos(theta) + s.u_nu * std::sin(theta);
    s.psi = std::numeric_limits<double>::quiet_NaN();
    s.stream = std::numeric_limits<double>::quiet_NaN();
    s.vorticity = 0.0;
    s.pressure = -0.5 * (v.A * v.A + v.B * v.B) / (r * r);
    return s;
}

std::vector<GridCell> export_grid(const GlobalSolution& g, const GridSpec& grid) {
    if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min)) fail(ErrorKind::DomainError, "need 0 < r_min < r_max");
    if (grid.n_r < 2 || grid.n_theta < 2) fail(ErrorKind::DomainError, "need at least 2 points per direction");
    std::vector<GridCell> out;
    out.reserve(static_cast<std::size_t>(grid.n_r) * grid.n_theta);
    for (int i = 0; i < grid.n_r; ++i) {
        const double r = grid.r_min + (grid.r_max - grid.r_min) * i / (grid.n_r - 1);
        for (int k = 0; k < grid.n_theta; ++k) {
            GridCell c;
            c.r = r;
            c.theta = kTwoPi * k / grid.n_theta;
            try {
                c.s = field_at(g, r, c.theta);
                c.valid = std::isfinite(c.s.u_x) && std::isfinite(c.s.u_y) && std::isfinite(c.s.vorticity);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::OnSingularRay) throw;
                c.valid = false;
            }
            out.push_back(c);
        }
    }
    return out;
}

void write_grid_csv(std::ostream& os, const std::vector<GridCell>& cells) {
    os << "r,theta,x,y,u_x,u_y,psi_value,stream,vorticity,pressure\n";
    os << std::setprecision(17);
    for (const GridCell& c : cells) {
        os << c.r << ',' << c.theta << ',' << c.r * std::cos(c.theta) << ',' << c.r * std::sin(c.theta);
        if (!c.valid) {
            os << ",null,null,null,null,null,null\n";
            continue;
        }
        os << ',' << c.s.u_x << ',' << c.s.u_y << ',' << c.s.psi << ',' << c.s.stream << ',' << c.s.vorticity << ','
           << c.s.pressure << '\n';
    }
}

}  // namespace eulerhom
