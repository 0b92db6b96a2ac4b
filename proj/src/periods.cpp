#include "eulerhom/periods.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eulerhom/errors.hpp"
#include "eulerhom/orbits.hpp"
#include "eulerhom/quadrature.hpp"

namespace eulerhom {

const char* method_name(SpanMethod m) {
    switch (m) {
    case SpanMethod::QuadratureHyperbolic: return "QuadratureHyperbolic";
    case SpanMethod::QuadratureElliptic: return "QuadratureElliptic";
    case SpanMethod::Conjugacy: return "Conjugacy";
    case SpanMethod::ClosedForm: return "ClosedForm";
    case SpanMethod::TanhSinhDirect: return "TanhSinhDirect";
    }
    return "?";
}

namespace {

void check_accept(const QuadResult& r, const SpanOptions& opt, const char* what) {
    if (!std::isfinite(r.value) || !(r.value > 0.0) || r.error > opt.accept_error) {
        std::ostringstream os;
        os << what << ": value " << r.value << " with error estimate " << r.error;
        fail(ErrorKind::QuadratureFailure, os.str());
    }
}

// r(xi)/(xi - xe) for r = 1 - xi^2 - delta xi^b with r(xe) = 0, written so
// that it stays accurate as xi -> xe.
double r_over_d(double xi, double xe, double b) {
    const double d = xi - xe;
    const double c = 1.0 - xe * xe;
    if (d == 0.0) return -2.0 * xe - c * b / xe;
    return -(xi + xe) - c * std::expm1(b * std::log1p(d / xe)) / d;
}

double polish_xi(double xi, double delta, double b) {
    for (int i = 0; i < 3; ++i) {
        const double r = 1.0 - xi * xi - delta * std::pow(xi, b);
        const double dr = -2.0 * xi - b * delta * std::pow(xi, b - 1.0);
        if (dr == 0.0) break;
        const double nx = xi - r / dr;
        if (!(nx > 0.0) || !std::isfinite(nx)) break;
        xi = nx;
    }
    return xi;
}

}  // namespace

double ArchIntegrand::one_minus_q(double phi) const {
    if (phi < 0.25 * kPi) {
        const double s = std::sin(phi), c = std::cos(phi);
        return (real_pow(s, a) - s * s) / (c * c);
    }
    const double w = 0.5 * kPi - phi;
    if (std::fabs(w) < 1e-8) return 1.0 - 0.5 * a;
    const double sw = std::sin(w), h = std::sin(0.5 * w);
    return 1.0 + std::expm1(a * std::log1p(-2.0 * h * h)) / (sw * sw);
}

double ArchIntegrand::operator()(double phi) const { return 1.0 / std::sqrt(E + sigma * K * one_minus_q(phi)); }

double ArchIntegrand::width() const { return sigma > 0.0 ? real_pow(E / K, 1.0 / a) : 0.0; }

ArchIntegrand arch_integrand(double lambda, double P, BSign bs) {
    if (!(lambda > 1.0) || !(P < 0.0) || bs == BSign::Zero)
        fail(ErrorKind::DomainError, "arch integrand needs lambda > 1, P < 0, B = +-1");
    const double sigma = bs == BSign::Plus ? 1.0 : -1.0;
    const FlowParams p(lambda, P, sigma);
    const Intercepts ic = find_intercepts(p);
    if (ic.kind != InterceptKind::HyperbolicSingle)
        fail(ErrorKind::DomainError, "no hyperbolic arch for these parameters");
    ArchIntegrand f;
    f.lambda = lambda;
    f.sigma = sigma;
    f.x0 = ic.x0;
    f.a = p.a();
    f.K = real_pow(ic.x0, -2.0 / lambda);
    const double l2 = lambda * lambda;
    // lambda^2 - sigma K; the direct difference cancels near the separatrix
    f.E = std::fabs(l2 - sigma * f.K) > 0.5 * l2 ? l2 - sigma * f.K : -2.0 * P / (ic.x0 * ic.x0);
    return f;
}

SpanResult span_hyperbolic(double lambda, double P, BSign bs, const SpanOptions& opt) {
    if (!(lambda > 1.0)) fail(ErrorKind::DomainError, "span_hyperbolic needs lambda > 1");
    if (!(P < 0.0)) fail(ErrorKind::DomainError, "span_hyperbolic needs P < 0");
    if (bs == BSign::Zero) return {kPi / lambda, SpanMethod::ClosedForm, 0.0};

    const ArchIntegrand f = arch_integrand(lambda, P, bs);
    QuadResult r = integrate_graded(f, 0.0, 0.5 * kPi, f.width(), opt.tol);
    r.value *= 2.0;
    r.error *= 2.0;
    check_accept(r, opt, "hyperbolic span");
    return {r.value, SpanMethod::QuadratureHyperbolic, r.error};
}

SpanResult period_elliptic(double lambda, double P, const SpanOptions& opt) {
    if (!(lambda > 1.0)) fail(ErrorKind::DomainError, "period_elliptic needs lambda > 1");
    const SteadyStateInfo ss = steady_state(lambda, 1.0);
    if (!(P > 0.0) || !(P < ss.P_max)) {
        std::ostringstream os;
        os << "P=" << P << " outside (0, P_max=" << ss.P_max << ")";
        fail(ErrorKind::DomainError, os.str());
    }
    const FlowParams p(lambda, P, 1.0);
    const Intercepts ic = find_intercepts(p);
    if (ic.kind == InterceptKind::Center) fail(ErrorKind::SteadyStateError, "P sits at the center");
    if (ic.kind != InterceptKind::EllipticPair) fail(ErrorKind::DomainError, "no closed orbit");

    // xi = lambda x^(1/lambda) turns the radicand into 1 - xi^2 - delta xi^b
    const double b = 2.0 - 2.0 * lambda;
    const double delta = 2.0 * P * std::pow(lambda, 2.0 * lambda - 2.0);
    const double xi0 = polish_xi(lambda * std::pow(ic.x0, 1.0 / lambda), delta, b);
    const double xi1 = polish_xi(lambda * std::pow(*ic.x1, 1.0 / lambda), delta, b);
    const double h = 0.5 * (xi1 - xi0);

    auto G = [&](double u) {
        const double sh = std::sin(0.5 * u), ch = std::cos(0.5 * u);
        if (u <= 0.5 * kPi) {
            const double d = 2.0 * h * sh * sh;
            return r_over_d(xi0 + d, xi0, b) / (2.0 * h * ch * ch);
        }
        const double d = 2.0 * h * ch * ch;
        return -r_over_d(xi1 - d, xi1, b) / (2.0 * h * sh * sh);
    };
    // simple-zero check at both turning points
    const double g0 = G(0.0), g1 = G(kPi);
    if (!(g0 > 0.0) || !(g1 > 0.0) || !std::isfinite(g0) || !std::isfinite(g1)) {
        SpanResult s = span_direct(p, opt.tol);
        if (s.est_error > opt.accept_error) fail(ErrorKind::QuadratureFailure, "fallback quadrature missed its target");
        return s;
    }
    auto f = [&](double u) { return 1.0 / std::sqrt(G(u)); };
    const double w = std::sqrt(2.0 * xi0 / h);
    QuadResult r1 = integrate_graded(f, 0.0, 0.5 * kPi, w, opt.tol);
    QuadResult r2 = integrate_gk(f, 0.5 * kPi, kPi, opt.tol);
    QuadResult r{2.0 * (r1.value + r2.value), 2.0 * (r1.error + r2.error), r1.ok && r2.ok};
    check_accept(r, opt, "elliptic period");
    return {r.value, SpanMethod::QuadratureElliptic, r.error};
}

SpanResult span_any(const FlowParams& p, const SpanOptions& opt) {
    const double lam = p.lambda;
    if (lam == 1.0) return {kPi, SpanMethod::ClosedForm, 0.0};
    if (lam < 1.0) {
        const FlowParams c = conjugate(p);
        SpanResult s = span_any(c, opt);
        return {c.lambda * s.T, SpanMethod::Conjugacy, c.lambda * s.est_error};
    }
    if (p.B == 0.0) {
        if (p.P < 0.0) return {kPi / lam, SpanMethod::ClosedForm, 0.0};
        fail(ErrorKind::DomainError, "B = 0 needs P < 0 for a non-trivial orbit");
    }
    if (p.P == 0.0) {
        if (p.B > 0.0) return {kPi, SpanMethod::ClosedForm, 0.0};  // parallel shear
        fail(ErrorKind::DomainError, "P = 0 with B < 0 has no orbit");
    }
    const Rescaled u = rescale_to_unit_B(p);
    if (p.P < 0.0) return span_hyperbolic(lam, u.params.P, p.B > 0.0 ? BSign::Plus : BSign::Minus, opt);
    if (p.B < 0.0) fail(ErrorKind::InconsistentParams, "B < 0 requires P < 0");
    const SteadyStateInfo ss = steady_state(lam, 1.0);
    if (std::fabs(u.params.P - ss.P_max) <= 1e-13 * ss.P_max)
        fail(ErrorKind::SteadyStateError, "(P, B) sits at the center");
    return period_elliptic(lam, u.params.P, opt);
}

SpanResult span_direct(const FlowParams& p, double tol) {
    if (p.lambda == 1.0) return {kPi, SpanMethod::ClosedForm, 0.0};
    const Intercepts ic = find_intercepts(p);
    const double lam = p.lambda, a = p.a(), B = p.B, P = p.P;
    const double l2 = lam * lam;
    auto y2_near = [&](double e, double d) {
        // -(g(e + d) - g(e)) with g(e) = 0
        const double x = e + d;
        double g = l2 * d * (x + e);
        if (B != 0.0) g -= B * std::pow(e, a) * std::expm1(a * std::log1p(d / e));
        return -g;
    };
    auto y2_plain = [&](double x) {
        double v = -l2 * x * x - 2.0 * P;
        if (B != 0.0) v += B * std::pow(x, a);
        return v;
    };
    double lo, hi;
    bool lo_turn;
    if (ic.kind == InterceptKind::EllipticPair) {
        lo = ic.x0;
        hi = *ic.x1;
        lo_turn = true;
    } else if (ic.kind == InterceptKind::HyperbolicSingle) {
        lo = 0.0;
        hi = ic.x0;
        lo_turn = false;
    } else if (ic.kind == InterceptKind::Center) {
        fail(ErrorKind::SteadyStateError, "(P, B) sits at the center");
    } else {
        fail(ErrorKind::DomainError, "empty level set");
    }
    auto f = [&](double x, double xc) {
        double y2;
        if (xc <= 0.0) y2 = lo_turn ? y2_near(lo, -xc) : y2_plain(x);
        else y2 = y2_near(hi, -xc);
        if (!(y2 > 0.0)) return 0.0;
        return 1.0 / std::sqrt(y2);
    };
    QuadResult r;
    try {
        r = integrate_ts(f, lo, hi, tol);
    } catch (const std::exception& e) {
        fail(ErrorKind::QuadratureFailure, e.what());
    }
    if (!std::isfinite(r.value) || !(r.value > 0.0)) fail(ErrorKind::QuadratureFailure, "tanh-sinh span failed");
    return {2.0 * r.value, SpanMethod::TanhSinhDirect, 2.0 * r.error};
}

LimitValues limit_values(double lambda) {
    if (!(lambda > 1.0)) fail(ErrorKind::DomainError, "limit values need lambda > 1");
    return {kTwoPi / std::sqrt(2.0 * lambda), kPi, kPi / lambda};
}

double chicone_W_upper(double lambda) { return std::pow(lambda / (lambda - 1.0), 0.5 * lambda); }

double chicone_W(double x, double lambda) {
    if (!(lambda > 1.0) || lambda == 2.0) fail(ErrorKind::DomainError, "W needs lambda > 1, lambda != 2");
    if (!(x > 0.0) || !(x < chicone_W_upper(lambda))) fail(ErrorKind::DomainError, "x outside the W interval");
    const double k = (lambda - 2.0) / lambda;
    const double m = std::pow(x, -2.0 / lambda);
    const double t = 1.0 - m;
    return -k * x * x * m + x * x * m * m - 1.0 + k * m +
           (lambda - 1.0) * (lambda - 2.0) / 6.0 * x * x * x * t * t * t;
}

bool monotonicity_proved(double lambda) { return lambda >= 4.0 / 3.0 && lambda != 2.0; }

const char* trend_name(Trend t) {
    switch (t) {
    case Trend::StrictlyIncreasing: return "strictly increasing";
    case Trend::StrictlyDecreasing: return "strictly decreasing";
    case Trend::Constant: return "constant";
    case Trend::NotMonotone: return "not monotone";
    }
    return "?";
}

Trend trend_of(const std::vector<double>& v, double flat_tol) {
    if (v.size() < 2) return Trend::Constant;
    bool flat = true, inc = true, dec = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::fabs(v[i] - v[0]) > flat_tol) flat = false;
        if (!(v[i] > v[i - 1])) inc = false;
        if (!(v[i] < v[i - 1])) dec = false;
    }
    if (flat) return Trend::Constant;
    if (inc) return Trend::StrictlyIncreasing;
    if (dec) return Trend::StrictlyDecreasing;
    return Trend::NotMonotone;
}

}  // namespace eulerhom
