#include "eulerhom/classify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "eulerhom/errors.hpp"
#include "eulerhom/periods.hpp"

namespace eulerhom {

double bernoulli(double psi, double dpsi, double lambda, double P) {
    if (!(psi > 0.0)) fail(ErrorKind::DomainError, "Bernoulli constant needs psi > 0");
    return (2.0 * P + lambda * lambda * psi * psi + dpsi * dpsi) * real_pow(psi, 2.0 / lambda - 2.0);
}

namespace {

bool near(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::fabs(b); }

}  // namespace

double bernoulli_variation(const LocalArc& arc, double kappa_max) {
    const double lam = arc.params.lambda, P = arc.params.P;
    const double scale = std::max(std::fabs(arc.params.B), std::pow(std::fabs(P), 1.0 / lam));
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const ProfilePoint& q : arc.profile) {
        if (!(q.psi > 0.0) || !std::isfinite(q.dpsi)) continue;
        const double kappa = (2.0 * std::fabs(P) + lam * lam * q.psi * q.psi + q.dpsi * q.dpsi) *
                             std::pow(q.psi, 2.0 / lam - 2.0) / scale;
        if (kappa > kappa_max) continue;
        const double b = bernoulli(q.psi, q.dpsi, lam, P);
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    if (!(hi >= lo)) fail(ErrorKind::InsufficientSamples, "no well-conditioned profile nodes");
    return (hi - lo) / scale;
}

SolutionType solution_type(const FlowParams& p) {
    const double lam = p.lambda, P = p.P, B = p.B;
    if (lam == 1.0) return {SolutionTag::ParallelShear, TypeBasis::Explicit};
    if (P == 0.0 && B == 0.0) fail(ErrorKind::DomainError, "P = B = 0 leaves only psi = 0");
    if (B < 0.0 && !(P < 0.0)) fail(ErrorKind::InconsistentParams, "B < 0 forces P < 0");
    if (P == 0.0) return {SolutionTag::ParallelShear, TypeBasis::Explicit};
    if (B == 0.0 && P > 0.0) fail(ErrorKind::DomainError, "B = 0 with P > 0 has an empty level set");
    if (lam == 0.5 && B == 0.0) return {SolutionTag::Parabolic, TypeBasis::Explicit};
    if ((lam - 1.0) * B > 0.0) {
        const SteadyStateInfo c = center(lam, B);
        if (near(P, c.P_max)) return {SolutionTag::Rotational, TypeBasis::Explicit};
        if (P > c.P_max) fail(ErrorKind::DomainError, "P beyond the center value: empty level set");
    }
    if (lam > 1.0) return {P > 0.0 ? SolutionTag::Elliptic : SolutionTag::Hyperbolic, TypeBasis::SignRule};
    return {B < 0.0 ? SolutionTag::Elliptic : SolutionTag::Hyperbolic, TypeBasis::SignRule};
}

const char* count_name(CountKind c) {
    switch (c) {
    case CountKind::Zero: return "Zero";
    case CountKind::Finite: return "Finite";
    case CountKind::Continuum: return "Continuum";
    case CountKind::Unknown: return "Unknown";
    }
    return "?";
}

EllipticCatalog count_elliptic(double lam) {
    if (!(lam > 0.0)) fail(ErrorKind::DomainError, "lambda must be positive");
    if (lam == 1.0) fail(ErrorKind::DomainError, "lambda = 1: all solutions are parallel shear flows");
    EllipticCatalog c;
    c.lambda = lam;
    if (lam == 0.5 || lam == 2.0) {
        c.count = CountKind::Continuum;
    } else if ((lam > 0.75 && lam < 1.0) || (lam > 1.0 && lam < 4.0 / 3.0)) {
        c.count = CountKind::Unknown;
    } else if (lam > 4.5) {
        c.count = CountKind::Finite;
        for (int n = 3; n * n < 2.0 * lam; ++n) ++c.n_solutions;
    } else {
        c.count = CountKind::Zero;
    }
    return c;
}

EllipticCatalog elliptic_catalog(double lam) {
    EllipticCatalog c = count_elliptic(lam);
    if (c.count != CountKind::Finite) return c;
    for (int n = 3; n * n < 2.0 * lam; ++n) {
        const EllipticSolution s = solve_elliptic(lam, n);
        c.entries.push_back({n, s.P_star, s.period});
    }
    return c;
}

EllipticSolution solve_elliptic(double lam, int n, const SolveOptions& opt) {
    if (lam == 2.0 && n == 2) {
        // every 0 < P < P_max has period pi; report a representative orbit
        const double P = 0.5 * steady_state(2.0, 1.0).P_max;
        const Intercepts ic = find_intercepts(FlowParams(2.0, P, 1.0));
        Orbit o = integrate_orbit(FlowParams(2.0, P, 1.0), PhaseState(*ic.x1, 0.0), StopCondition::return_to_start(), opt.ode);
        return {true, P, kPi, std::move(o)};
    }
    if (!(lam > 1.0) || !(n * n > 4) || !(n * n < 2.0 * lam)) {
        std::ostringstream os;
        os << "no elliptic solution with n = " << n << " at lambda = " << lam << " (need 4 < n^2 < 2 lambda)";
        fail(ErrorKind::NoSolution, os.str());
    }
    const double target = kTwoPi / n;
    const double Pmax = steady_state(lam, 1.0).P_max;
    auto f = [&](double P) { return period_elliptic(lam, P, opt.span).T - target; };
    double lo = 1e-12 * Pmax, hi = Pmax * (1.0 - 1e-12);
    double flo = f(lo), fhi = f(hi);
    if (!(flo * fhi < 0.0)) fail(ErrorKind::NonMonotoneDetected, "period does not bracket 2 pi / n");
    double P = lo, fP = flo;
    for (int it = 0; it < 200 && std::fabs(fP) > opt.root_tol; ++it) {
        // geometric midpoint while the bracket spans decades
        P = hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        fP = f(P);
        if (!(std::min(flo, fhi) <= fP && fP <= std::max(flo, fhi)))
            fail(ErrorKind::NonMonotoneDetected, "period left the bracket during bisection");
        if ((fP < 0.0) == (flo < 0.0)) {
            lo = P;
            flo = fP;
        } else {
            hi = P;
            fhi = fP;
        }
    }
    if (std::fabs(fP) > opt.root_tol) fail(ErrorKind::NonMonotoneDetected, "bisection did not converge");
    const FlowParams p(lam, P, 1.0);
    const Intercepts ic = find_intercepts(p);
    Orbit o = integrate_orbit(p, PhaseState(*ic.x1, 0.0), StopCondition::return_to_start(), opt.ode);
    return {false, P, target + fP, std::move(o)};
}

HyperbolicSolve solve_hyperbolic_span(double lam, PSign s, double target, int n_intervals,
                                      const SolveOptions& opt) {
    auto out_of_range = [&](const std::string& why) {
        std::ostringstream os;
        os << "life-span " << target << " unavailable at lambda = " << lam << ": " << why;
        fail(ErrorKind::OutOfRange, os.str());
    };
    if (!(target > 0.0) || !std::isfinite(target)) out_of_range("span must be positive");
    if (lam <= 0.5) out_of_range("no hyperbolic H1 solutions for lambda <= 1/2");
    if (lam == 1.0) out_of_range("lambda = 1 arcs are shear flows of span pi");

    double P = 0.0, sgnB = 1.0;
    if (lam > 1.0) {
        if (s == PSign::Plus) out_of_range("no hyperbolic solutions for P > 0");
        P = -1.0;
        const double mid = kPi / lam;
        if (std::fabs(target - mid) <= 4.0 * std::numeric_limits<double>::epsilon() * mid)
            return {0.0, make_hyperbolic_arc(FlowParams(lam, P, 0.0), n_intervals)};
        if (target > mid && target < kPi) sgnB = 1.0;
        else if (target < mid) sgnB = -1.0;
        else out_of_range("needs 0 < T < pi");
    } else {
        if (s == PSign::Minus) out_of_range("P < 0 spans lie in (pi, pi/lambda) and cannot tile the circle");
        if (!(target < kPi)) out_of_range("needs 0 < T < pi");
        P = 1.0;
    }
    auto T_of = [&](double u) { return span_any(FlowParams(lam, P, sgnB * std::exp(u)), opt.span).T; };
    // T increases with u = log|B| for B > 0 and decreases for B < 0
    const double dir = sgnB;
    auto g = [&](double u) { return dir * (T_of(u) - target); };
    double lo = -2.0, hi = 2.0;
    double glo = g(lo), ghi = g(hi);
    while (glo > 0.0 && lo > -600.0) glo = g(lo -= 4.0);
    while (ghi < 0.0 && hi < 600.0) ghi = g(hi += 4.0);
    if (!(glo <= 0.0 && ghi >= 0.0)) fail(ErrorKind::NoBracket, "could not bracket the Bernoulli constant");
    double u = lo, gu = glo;
    for (int it = 0; it < 200 && std::fabs(gu) > 0.1 * opt.root_tol; ++it) {
        u = 0.5 * (lo + hi);
        gu = g(u);
        if (gu < 0.0) lo = u;
        else hi = u;
        if (hi - lo < 1e-15 * std::max(1.0, std::fabs(u))) break;
    }
    if (std::fabs(gu) > opt.root_tol) fail(ErrorKind::NoBracket, "span root-finding stalled");
    const double B = sgnB * std::exp(u);
    return {B, make_hyperbolic_arc(FlowParams(lam, P, B), n_intervals)};
}

HyperbolicSolve solve_hyperbolic_span_at(double lam, double P, double target, int n_intervals,
                                         const SolveOptions& opt) {
    if (P == 0.0) fail(ErrorKind::OutOfRange, "P = 0 arcs are shear flows of span pi");
    const HyperbolicSolve unit = solve_hyperbolic_span(lam, P > 0.0 ? PSign::Plus : PSign::Minus, target, n_intervals, opt);
    const double B = unit.B_star * real_pow(std::fabs(P), 1.0 / lam);
    return {B, make_hyperbolic_arc(FlowParams(lam, P, B), n_intervals)};
}

std::vector<HyperbolicRanges> hyperbolic_ranges(double lam) {
    if (!(lam > 0.0)) fail(ErrorKind::DomainError, "lambda must be positive");
    std::vector<HyperbolicRanges> out;
    if (lam == 1.0) {
        out.push_back({0.0, {{"B>2P", kPi, kPi, true, true}}, true});
        return out;
    }
    if (lam > 1.0) {
        out.push_back({-1.0,
                       {{"B>0", kPi / lam, kPi, false, true},
                        {"B=0", kPi / lam, kPi / lam, true, true},
                        {"B<0", 0.0, kPi / lam, false, true}},
                       true});
        out.push_back({1.0, {{"any B", 0.0, 0.0, false, false}}, false});
        return out;
    }
    if (lam <= 0.5) {
        out.push_back({1.0, {{"B>0", 0.0, 0.0, false, false}}, false});
        out.push_back({-1.0, {{"B>0", 0.0, 0.0, false, false}}, false});
        return out;
    }
    out.push_back({1.0, {{"B>0", 0.0, kPi, false, true}}, true});
    // local arcs exist but are longer than pi, so they cannot tile
    out.push_back({-1.0, {{"B>0", kPi, kPi / lam, false, true}, {"B=0", kPi / lam, kPi / lam, true, true}}, false});
    return out;
}

}  // namespace eulerhom
