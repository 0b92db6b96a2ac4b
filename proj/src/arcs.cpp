#include "eulerhom/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "eulerhom/errors.hpp"
#include "eulerhom/orbits.hpp"
#include "eulerhom/periods.hpp"
#include "eulerhom/quadrature.hpp"

namespace eulerhom {

const char* tag_name(SolutionTag t) {
    switch (t) {
    case SolutionTag::Elliptic: return "Elliptic";
    case SolutionTag::Hyperbolic: return "Hyperbolic";
    case SolutionTag::Parabolic: return "Parabolic";
    case SolutionTag::Rotational: return "Rotational";
    case SolutionTag::ParallelShear: return "ParallelShear";
    case SolutionTag::Unknown: return "Unknown";
    }
    return "?";
}

const char* basis_name(TypeBasis b) {
    switch (b) {
    case TypeBasis::SignRule: return "SignRule";
    case TypeBasis::Table: return "Table";
    case TypeBasis::Explicit: return "Explicit";
    }
    return "?";
}

int grading_exponent(double lambda) {
    // x^a with a = 2 - 2/lambda is smooth at the axis only for lambda = 1, 2
    if (lambda == 2.0 || lambda == 1.0) return 1;
    if (lambda > 1.0 || lambda <= 0.5) return 3;
    // psi'^2 dtheta/ds ~ s^(k(2 lambda - 1) - 1) at a cusp: smooth when
    // k / m is an integer, otherwise k = 6 keeps the leading power mild
    const double m = 1.0 / (2.0 * lambda - 1.0);
    const double mr = std::round(m);
    if (std::fabs(m - mr) < 1e-9 && mr <= 6.0) {
        const int mi = static_cast<int>(mr);
        return mi * ((3 + mi - 1) / mi);
    }
    return 6;
}

std::vector<double> graded_nodes(double T, int n, int k) {
    std::vector<double> th(n + 1);
    for (int j = 0; 2 * j <= n; ++j) {
        const double s = static_cast<double>(j) / n;
        const double sk = std::pow(s, k), rk = std::pow(1.0 - s, k);
        th[j] = 2 * j == n ? 0.5 * T : T * sk / (sk + rk);
        th[n - j] = 2 * j == n ? 0.5 * T : T - th[j];
    }
    th[0] = 0.0;
    th[n] = T;
    return th;
}

ProfilePoint ArcShape::at_from_end(double d) const {
    const double T = span();
    if (!mirror_symmetric()) return at(T - d);
    const ProfilePoint q = at(d);
    return {T - d, q.psi, -q.dpsi};
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// lambda > 1, P < 0, B != 0: the arch x = s x0 sin(phi) with theta(phi)
// tabulated by Gauss-Kronrod and inverted by Newton.
class QuadratureArch final : public ArcShape {
public:
    QuadratureArch(double lambda, double P_unit, BSign b, double scale)
        : f_(arch_integrand(lambda, P_unit, b)), scale_(scale) {
        std::vector<double> pts = graded_breakpoints(0.0, 0.5 * kPi, f_.width());
        for (int i = 1; i < 256; ++i) pts.push_back(0.5 * kPi * i / 256.0);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        phi_ = pts;
        cum_.assign(pts.size(), 0.0);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            cum_[i + 1] = cum_[i] + integrate_gk(f_, pts[i], pts[i + 1], 1e-14).value;
        T_ = 2.0 * cum_.back();
    }

    double span() const override { return T_; }
    bool mirror_symmetric() const override { return true; }

    ProfilePoint at(double th) const override {
        if (th <= 0.0) return {th, 0.0, scale_ * f_.x0 / f_(0.0)};
        if (th >= T_) return {th, 0.0, -scale_ * f_.x0 / f_(0.0)};
        if (th > 0.5 * T_) {
            const ProfilePoint m = at(T_ - th);
            return {th, m.psi, -m.dpsi};
        }
        const double phi = phi_of(th);
        return {th, scale_ * f_.x0 * std::sin(phi), scale_ * f_.x0 * std::cos(phi) / f_(phi)};
    }

private:
    double theta_in(std::size_t i, double phi) const {
        if (phi <= phi_[i]) return cum_[i];
        return cum_[i] + integrate_gk(f_, phi_[i], phi, 1e-14).value;
    }

    double phi_of(double th) const {
        std::size_t i = std::upper_bound(cum_.begin(), cum_.end(), th) - cum_.begin();
        i = std::clamp<std::size_t>(i, 1, cum_.size() - 1) - 1;
        const double lo = phi_[i], hi = phi_[i + 1];
        const double guess = lo + (hi - lo) * (th - cum_[i]) / (cum_[i + 1] - cum_[i]);
        auto g = [&](double phi) { return std::make_pair(theta_in(i, phi) - th, f_(phi)); };
        std::uintmax_t iters = 60;
        return boost::math::tools::newton_raphson_iterate(g, guess, lo, hi, 50, iters);
    }

    ArchIntegrand f_;
    double scale_;
    std::vector<double> phi_, cum_;
    double T_ = 0.0;
};

class HarmonicArch final : public ArcShape {
public:
    HarmonicArch(double A, double lambda) : A_(A), lam_(lambda) {}
    double span() const override { return kPi / lam_; }
    bool mirror_symmetric() const override { return true; }
    ProfilePoint at(double th) const override {
        return {th, A_ * std::sin(lam_ * th), lam_ * A_ * std::cos(lam_ * th)};
    }

private:
    double A_, lam_;
};

// A sin^lambda(theta) on [0, pi]
class ShearArch final : public ArcShape {
public:
    ShearArch(double A, double lambda) : A_(A), lam_(lambda) {}
    double span() const override { return kPi; }
    bool mirror_symmetric() const override { return true; }
    ProfilePoint at(double th) const override {
        const double s = std::sin(th), c = std::cos(th);
        if (th <= 0.0 || th >= kPi || s <= 0.0) {
            const double sgn = th < 0.5 * kPi ? 1.0 : -1.0;
            const double d = lam_ < 1.0 ? kInf : (lam_ == 1.0 ? A_ : 0.0);
            return {th, 0.0, sgn * d};
        }
        return {th, A_ * real_pow(s, lam_), lam_ * A_ * real_pow(s, lam_ - 1.0) * c};
    }

private:
    double A_, lam_;
};

// psi(theta) = X(lambda theta)^lambda, X the shape of the conjugate problem
class ConjugateArch final : public ArcShape {
public:
    ConjugateArch(std::shared_ptr<const ArcShape> inner, double lambda) : in_(std::move(inner)), lam_(lambda) {}
    double span() const override { return in_->span() / lam_; }
    bool mirror_symmetric() const override { return in_->mirror_symmetric(); }
    ProfilePoint at(double th) const override {
        const ProfilePoint X = in_->at(lam_ * th);
        if (!(X.psi > 0.0)) return {th, 0.0, std::copysign(kInf, X.dpsi)};
        const double psi = real_pow(X.psi, lam_);
        return {th, psi, lam_ * lam_ * psi / X.psi * X.dpsi};
    }

private:
    std::shared_ptr<const ArcShape> in_;
    double lam_;
};

class FamilyArch final : public ArcShape {
public:
    explicit FamilyArch(ExplicitFamily f) : f_(f) {}
    double span() const override {
        const auto [a, b] = f_.domain();
        return b - a;
    }
    // every family is even about the middle of its domain
    bool mirror_symmetric() const override { return true; }
    ProfilePoint at(double th) const override {
        const auto [p, d] = evaluate_family(f_, f_.domain().first + th);
        return {th, p, d};
    }

private:
    ExplicitFamily f_;
};

class SampledArch final : public ArcShape {
public:
    SampledArch(std::vector<ProfilePoint> pts, bool periodic, const std::optional<FlowParams>& ode)
        : p_(std::move(pts)), d2_(p_.size(), std::numeric_limits<double>::quiet_NaN()), periodic_(periodic) {
        if (p_.size() < 2) fail(ErrorKind::InsufficientSamples, "sampled arc needs two points");
        if (!ode) return;
        // psi'' from the ODE away from zeros of psi, where it cancels badly
        const double lam = ode->lambda, q = ode->q(), P = ode->P;
        double top = 0.0;
        for (const ProfilePoint& x : p_) top = std::max(top, std::fabs(x.psi));
        for (std::size_t i = 0; i < p_.size(); ++i) {
            const ProfilePoint& x = p_[i];
            if (std::fabs(x.psi) > 1e-6 * top && std::isfinite(x.dpsi))
                d2_[i] = (2.0 * q * P + q * x.dpsi * x.dpsi - lam * lam * x.psi * x.psi) / (lam * x.psi);
        }
    }
    double span() const override { return p_.back().theta - p_.front().theta; }
    ProfilePoint at(double th) const override {
        const double t0 = p_.front().theta, T = span();
        double u = th;
        if (periodic_) u = t0 + std::fmod(std::fmod(th - t0, T) + T, T);
        u = std::clamp(u, t0, p_.back().theta);
        std::size_t i = std::upper_bound(p_.begin(), p_.end(), u,
                                         [](double v, const ProfilePoint& q) { return v < q.theta; }) -
                        p_.begin();
        i = std::clamp<std::size_t>(i, 1, p_.size() - 1) - 1;
        const ProfilePoint &a = p_[i], &b = p_[i + 1];
        const double h = b.theta - a.theta, s = (u - a.theta) / h;
        if (!std::isfinite(a.dpsi) || !std::isfinite(b.dpsi)) {
            const double slope = (b.psi - a.psi) / h;
            if (s == 0.0) return {th, a.psi, a.dpsi};
            if (s == 1.0) return {th, b.psi, b.dpsi};
            return {th, a.psi + s * (b.psi - a.psi), slope};
        }
        const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
        if (std::isfinite(d2_[i]) && std::isfinite(d2_[i + 1])) {
            // quintic Hermite
            const double a2 = h * h * d2_[i], b2 = h * h * d2_[i + 1];
            const double psi = (1 - 10 * s3 + 15 * s4 - 6 * s5) * a.psi + (10 * s3 - 15 * s4 + 6 * s5) * b.psi +
                               (s - 6 * s3 + 8 * s4 - 3 * s5) * h * a.dpsi + (-4 * s3 + 7 * s4 - 3 * s5) * h * b.dpsi +
                               (0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5) * a2 + (0.5 * s3 - s4 + 0.5 * s5) * b2;
            const double e = -30 * s2 + 60 * s3 - 30 * s4;
            const double dpsi = e * (a.psi - b.psi) / h + (1 - 18 * s2 + 32 * s3 - 15 * s4) * a.dpsi +
                                (-12 * s2 + 28 * s3 - 15 * s4) * b.dpsi +
                                ((s - 4.5 * s2 + 6 * s3 - 2.5 * s4) * a2 + (1.5 * s2 - 4 * s3 + 2.5 * s4) * b2) / h;
            return {th, psi, dpsi};
        }
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
        const double h01 = s2 * (3 - 2 * s), h11 = s2 * (s - 1);
        const double psi = h00 * a.psi + h10 * h * a.dpsi + h01 * b.psi + h11 * h * b.dpsi;
        const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1, d01 = -d00, d11 = 3 * s2 - 2 * s;
        const double dpsi = (d00 * a.psi + d01 * b.psi) / h + d10 * a.dpsi + d11 * b.dpsi;
        return {th, psi, dpsi};
    }

private:
    std::vector<ProfilePoint> p_;
    std::vector<double> d2_;  // psi'' where the ODE gives it reliably, else NaN
    bool periodic_;
};

int round_intervals(int n) { return std::max(64, (n + 3) / 4 * 4); }

std::vector<ProfilePoint> sample_symmetric(const ArcShape& s, int n, int k) {
    const double T = s.span();
    const std::vector<double> th = graded_nodes(T, n, k);
    std::vector<ProfilePoint> out(n + 1);
    for (int j = 0; 2 * j <= n; ++j) {
        const ProfilePoint q = s.at(th[j]);
        out[j] = {th[j], j == 0 ? 0.0 : q.psi, q.dpsi};
        out[n - j] = {th[n - j], out[j].psi, -q.dpsi};
    }
    out[n / 2].dpsi = 0.0;
    return out;
}

}  // namespace

std::shared_ptr<const ArcShape> sampled_shape(const std::vector<ProfilePoint>& profile, bool periodic,
                                              const std::optional<FlowParams>& ode) {
    return std::make_shared<SampledArch>(profile, periodic, ode);
}

std::shared_ptr<const ArcShape> hyperbolic_shape(const FlowParams& p) {
    const double lam = p.lambda;
    if (lam == 1.0) {
        if (!(p.B - 2.0 * p.P > 0.0)) fail(ErrorKind::DomainError, "lambda = 1 needs B - 2P > 0");
        return std::make_shared<ShearArch>(std::sqrt(p.B - 2.0 * p.P), 1.0);
    }
    if (lam < 1.0) {
        if (p.B < 0.0) fail(ErrorKind::DomainError, "lambda < 1 with B < 0 is elliptic");
        if (p.B == 0.0 && !(p.P < 0.0)) fail(ErrorKind::DomainError, "B = 0 needs P < 0");
        const FlowParams c = conjugate(p);
        return std::make_shared<ConjugateArch>(hyperbolic_shape(c), lam);
    }
    if (p.P > 0.0) fail(ErrorKind::DomainError, "no hyperbolic arcs for lambda > 1 and P > 0");
    if (p.P == 0.0) {
        if (!(p.B > 0.0)) fail(ErrorKind::DomainError, "P = 0 needs B > 0");
        return std::make_shared<ShearArch>(real_pow(p.B / (lam * lam), 0.5 * lam), lam);
    }
    if (p.B == 0.0) return std::make_shared<HarmonicArch>(std::sqrt(-2.0 * p.P) / lam, lam);
    const Rescaled u = rescale_to_unit_B(p);
    return std::make_shared<QuadratureArch>(lam, u.params.P, p.B > 0.0 ? BSign::Plus : BSign::Minus, u.scale);
}

LocalArc make_hyperbolic_arc(const FlowParams& p, int n_intervals) {
    LocalArc arc{p, 0.0, {}, 0.0, {}, hyperbolic_shape(p)};
    arc.span = arc.shape->span();
    const int n = round_intervals(n_intervals);
    arc.profile = sample_symmetric(*arc.shape, n, grading_exponent(p.lambda));
    arc.endpoint_slope = std::fabs(arc.profile.front().dpsi);
    const bool shear = p.lambda == 1.0 || p.P == 0.0;
    arc.type = shear ? SolutionType{SolutionTag::ParallelShear, TypeBasis::Explicit}
                     : SolutionType{SolutionTag::Hyperbolic, TypeBasis::SignRule};
    return arc;
}

LocalArc make_elliptic_arc(const FlowParams& p, const OdeOptions& opt) {
    if (p.lambda < 1.0) {
        if (!(p.B < 0.0)) fail(ErrorKind::DomainError, "lambda < 1 elliptic arcs need B < 0");
        const LocalArc inner = make_elliptic_arc(conjugate(p), opt);
        auto shape = std::make_shared<ConjugateArch>(inner.shape, p.lambda);
        LocalArc arc{p, shape->span(), {}, 0.0, {SolutionTag::Elliptic, TypeBasis::SignRule}, shape};
        const int n = static_cast<int>(inner.profile.size()) - 1;
        for (int j = 0; j <= n; ++j) {
            const ProfilePoint q = shape->at(arc.span * j / n);
            arc.profile.push_back({arc.span * j / n, q.psi, j == 0 || j == n ? 0.0 : q.dpsi});
        }
        return arc;
    }
    if (!(p.lambda > 1.0) || !(p.B > 0.0)) fail(ErrorKind::DomainError, "elliptic arcs need lambda > 1 and B > 0");
    const Intercepts ic = find_intercepts(p);
    if (ic.kind == InterceptKind::Center) fail(ErrorKind::SteadyStateError, "orbit collapses to the center");
    if (ic.kind != InterceptKind::EllipticPair) fail(ErrorKind::DomainError, "no closed orbit at these parameters");
    const Orbit o = integrate_orbit(p, PhaseState(*ic.x1, 0.0), StopCondition::return_to_start(), opt);
    LocalArc arc{p, o.measured_span, reconstruct_profile(o), 0.0, {SolutionTag::Elliptic, TypeBasis::SignRule}, nullptr};
    arc.shape = sampled_shape(arc.profile, true);
    return arc;
}

LocalArc make_family_arc(const ExplicitFamily& f, int n_intervals) {
    auto shape = std::make_shared<FamilyArch>(f);
    LocalArc arc{f.params, shape->span(), {}, 0.0, {}, shape};
    const int n = round_intervals(n_intervals);
    for (int j = 0; j <= n; ++j) arc.profile.push_back(shape->at(arc.span * j / n));
    arc.profile.back().theta = arc.span;
    const double g1 = f.coeffs.gamma1, g2 = std::fabs(f.coeffs.gamma2);
    SolutionTag tag = SolutionTag::Hyperbolic;
    switch (f.kind) {
    case FamilyKind::Rotational: tag = SolutionTag::Rotational; break;
    case FamilyKind::ParallelShear: tag = SolutionTag::ParallelShear; break;
    case FamilyKind::Lambda2:
    case FamilyKind::LambdaHalf:
        tag = g2 < g1 ? SolutionTag::Elliptic : (g2 == g1 ? SolutionTag::Parabolic : SolutionTag::Hyperbolic);
        break;
    default: break;
    }
    arc.type = {tag, TypeBasis::Explicit};
    return arc;
}

}  // namespace eulerhom
