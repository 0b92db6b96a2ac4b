#include "eulerhom/families.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "eulerhom/errors.hpp"

namespace eulerhom {

const char* family_name(FamilyKind k) {
    switch (k) {
    case FamilyKind::Rotational: return "Rotational";
    case FamilyKind::ParallelShear: return "ParallelShear";
    case FamilyKind::Lambda2: return "Lambda2";
    case FamilyKind::LambdaHalf: return "LambdaHalf";
    case FamilyKind::Harmonic: return "Harmonic";
    case FamilyKind::PointVortex: return "PointVortex";
    }
    return "?";
}

ExplicitFamily ExplicitFamily::rotational(double lambda, double P) {
    if (!((lambda - 1.0) * P > 0.0)) fail(ErrorKind::DomainError, "rotational flow needs (lambda-1)P > 0");
    const double c = std::sqrt(2.0 * (lambda - 1.0) * P) / lambda;
    const double B = (2.0 * P + lambda * lambda * c * c) * real_pow(c, 2.0 / lambda - 2.0);
    FamilyCoeffs k;
    k.A = c;
    return {FamilyKind::Rotational, k, FlowParams(lambda, P, B)};
}

ExplicitFamily ExplicitFamily::parallel_shear(double lambda, double A) {
    if (!(A > 0.0)) fail(ErrorKind::DomainError, "shear amplitude must be positive");
    FamilyCoeffs k;
    k.A = A;
    return {FamilyKind::ParallelShear, k, FlowParams(lambda, 0.0, lambda * lambda * real_pow(A, 2.0 / lambda))};
}

ExplicitFamily ExplicitFamily::lambda2(double g1, double g2) {
    FamilyCoeffs k;
    k.gamma1 = g1;
    k.gamma2 = g2;
    return {FamilyKind::Lambda2, k, FlowParams(2.0, 2.0 * (g1 * g1 - g2 * g2), 8.0 * g1)};
}

ExplicitFamily ExplicitFamily::lambda_half(double g1, double g2) {
    if (!(g1 > 0.0) || std::fabs(g2) > g1) fail(ErrorKind::DomainError, "lambda = 1/2 family needs |gamma2| <= gamma1");
    FamilyCoeffs k;
    k.gamma1 = g1;
    k.gamma2 = g2;
    return {FamilyKind::LambdaHalf, k, FlowParams(0.5, -0.25 * g1, 0.25 * (g2 * g2 - g1 * g1))};
}

ExplicitFamily ExplicitFamily::harmonic(double lambda, double P) {
    if (!(P < 0.0)) fail(ErrorKind::DomainError, "harmonic family needs P < 0");
    FamilyCoeffs k;
    k.A = std::sqrt(-2.0 * P) / lambda;
    return {FamilyKind::Harmonic, k, FlowParams(lambda, P, 0.0)};
}

std::pair<double, double> ExplicitFamily::domain() const {
    switch (kind) {
    case FamilyKind::ParallelShear: return {-0.5 * kPi, 0.5 * kPi};
    case FamilyKind::Harmonic: return {-0.5 * kPi / params.lambda, 0.5 * kPi / params.lambda};
    default: return {0.0, kTwoPi};
    }
}

std::pair<double, double> evaluate_family(const ExplicitFamily& f, double th) {
    const double lam = f.params.lambda;
    const FamilyCoeffs& k = f.coeffs;
    switch (f.kind) {
    case FamilyKind::Rotational: return {k.A, 0.0};
    case FamilyKind::ParallelShear: {
        const double c = std::cos(th), s = std::sin(th), ac = std::fabs(c);
        const double psi = k.A * real_pow(ac, lam);
        if (ac == 0.0 && lam < 1.0) return {psi, std::numeric_limits<double>::quiet_NaN()};
        const double d = ac == 0.0 ? (lam == 1.0 ? -k.A * s : 0.0)
                                   : -lam * k.A * real_pow(ac, lam - 1.0) * std::copysign(1.0, c) * s;
        return {psi, d};
    }
    case FamilyKind::Lambda2:
        return {k.gamma1 + k.gamma2 * std::cos(2.0 * th), -2.0 * k.gamma2 * std::sin(2.0 * th)};
    case FamilyKind::LambdaHalf: {
        const double v = k.gamma1 + k.gamma2 * std::cos(th);
        if (v < 0.0) fail(ErrorKind::DomainError, "gamma1 + gamma2 cos(theta) < 0");
        const double psi = std::sqrt(v);
        if (psi == 0.0) return {0.0, std::numeric_limits<double>::quiet_NaN()};
        return {psi, -0.5 * k.gamma2 * std::sin(th) / psi};
    }
    case FamilyKind::Harmonic:
        return {k.A * std::cos(lam * th), -lam * k.A * std::sin(lam * th)};
    case FamilyKind::PointVortex:
        fail(ErrorKind::DomainError, "point vortex has no angular stream function");
    }
    return {0.0, 0.0};
}

std::vector<ProfilePoint> sample_family(const ExplicitFamily& f, int n) {
    if (n < 1) fail(ErrorKind::InsufficientSamples, "need at least one interval");
    const auto [a, b] = f.domain();
    std::vector<ProfilePoint> out;
    out.reserve(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double th = j == n ? b : a + (b - a) * j / n;
        const auto [p, d] = evaluate_family(f, th);
        out.push_back({th, p, d});
    }
    return out;
}

double PointVortexField::speed(double r) const { return std::hypot(A, B) / r; }

PointVortexField point_vortex(double A, double B) { return {A, B}; }

double test_function(int m, double th) {
    if (m == 0) return 1.0;
    if (m <= 8) return std::cos(m * th);
    return std::sin((m - 8) * th);
}

double test_function_derivative(int m, double th) {
    if (m == 0) return 0.0;
    if (m <= 8) return -m * std::sin(m * th);
    const int k = m - 8;
    return k * std::cos(k * th);
}

double test_function_integral(int m, double a, double b) {
    if (m == 0) return b - a;
    if (m <= 8) return (std::sin(m * b) - std::sin(m * a)) / m;
    const int k = m - 8;
    return (std::cos(k * a) - std::cos(k * b)) / k;
}

std::vector<double> index_weights(std::size_t np) {
    std::vector<double> w(np, 0.0);
    if (np < 2) return w;
    const std::size_t n = np - 1;
    auto simpson = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i < to; i += 2) {
            w[i] += 1.0 / 3.0;
            w[i + 1] += 4.0 / 3.0;
            w[i + 2] += 1.0 / 3.0;
        }
    };
    if (n % 4 == 0) {
        for (std::size_t i = 0; i < n; i += 4) {
            const double c[5] = {7, 32, 12, 32, 7};
            for (int k = 0; k < 5; ++k) w[i + k] += 2.0 * c[k] / 45.0;
        }
    } else if (n % 2 == 0) {
        simpson(0, n);
    } else if (n == 1) {
        w[0] = w[1] = 0.5;
    } else {
        simpson(0, n - 3);
        const double c[4] = {3, 9, 9, 3};
        for (int k = 0; k < 4; ++k) w[n - 3 + k] += c[k] / 8.0;
    }
    return w;
}

namespace {

// First-derivative weights at x0 for the given nodes (Fornberg's recursion).
std::vector<double> fd_weights(const std::vector<double>& x, double x0) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
    double c1 = 1.0, c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min<std::size_t>(i, 1);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
    return w;
}

// eighth-order derivative in the index variable; stencils shift at the ends
std::vector<double> d_index(const std::vector<double>& f) {
    constexpr int W = 9;
    const std::size_t n = f.size();
    std::vector<double> d(n, std::numeric_limits<double>::quiet_NaN());
    if (n < W) return d;
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t;
        std::vector<double> nodes(W);
        for (int i = 0; i < W; ++i) nodes[i] = i;
        for (int at = 0; at < W; ++at) t.push_back(fd_weights(nodes, at));
        return t;
    }();
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t start = j < W / 2 ? 0 : std::min(j - W / 2, n - W);
        const std::vector<double>& c = table[j - start];
        double v = 0.0;
        for (int i = 0; i < W; ++i) v += c[i] * f[start + i];
        d[j] = v;
    }
    return d;
}

}  // namespace

std::vector<double> index_jacobian(const std::vector<ProfilePoint>& seg) {
    const std::size_t n = seg.size();
    std::vector<double> th(n);
    for (std::size_t j = 0; j < n; ++j) th[j] = seg[j].theta;
    std::vector<double> J = d_index(th);
    if (n < 2) return J;
    const double ends = th.front() + th.back();
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(th.front()), std::fabs(th.back()));
    bool mirrored = true;
    for (std::size_t j = 0; 2 * j < n && mirrored; ++j) mirrored = std::fabs(th[j] + th[n - 1 - j] - ends) <= tol;
    if (mirrored)
        for (std::size_t j = 0; 2 * j + 1 < n; ++j) J[n - 1 - j] = J[j];
    return J;
}

double segment_integral(const std::vector<ProfilePoint>& seg, const std::function<double(const ProfilePoint&)>& f) {
    const std::size_t n = seg.size();
    if (n < 11) fail(ErrorKind::InsufficientSamples, "segment too short to integrate");
    const std::vector<double> w = index_weights(n);
    const std::vector<double> J = index_jacobian(seg);
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = J[j] * f(seg[j]);
    const double c[5] = {5.0, -10.0, 10.0, -5.0, 1.0};
    if (!std::isfinite(g[0])) {
        g[0] = 0.0;
        for (int k = 1; k <= 5; ++k) g[0] += c[k - 1] * g[k];
    }
    if (!std::isfinite(g[n - 1])) {
        g[n - 1] = 0.0;
        for (int k = 1; k <= 5; ++k) g[n - 1] += c[k - 1] * g[n - 1 - k];
    }
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        if (std::isfinite(g[j])) v += w[j] * g[j];
    return v;
}

Residual ode_residual(const std::vector<Segment>& segments, double lam, double P) {
    Residual res;
    res.weak.assign(kWeakModes, 0.0);
    const double q = lam - 1.0;
    for (const Segment& sg : segments) {
        const std::vector<ProfilePoint>& seg = sg.local;
        const double off = sg.offset;
        if (seg.size() < 64) {
            std::ostringstream os;
            os << "segment with " << seg.size() << " samples, need 64";
            fail(ErrorKind::InsufficientSamples, os.str());
        }
        const std::size_t n = seg.size();
        std::vector<double> dp(n);
        for (std::size_t j = 0; j < n; ++j) dp[j] = seg[j].dpsi;
        const std::vector<double> J = index_jacobian(seg);
        const std::vector<double> ddp = d_index(dp);

        for (std::size_t j = 2; j + 2 < n; ++j) {
            bool fine = true;
            const std::size_t start = j < 4 ? 0 : std::min(j - 4, n - 9);
            for (std::size_t k = start; k < start + 9; ++k) fine = fine && std::isfinite(seg[k].dpsi);
            if (!fine || !std::isfinite(seg[j].psi)) continue;
            const double psi = seg[j].psi, d = seg[j].dpsi;
            const double d2 = ddp[j] / J[j];
            const double r = 2.0 * q * P + q * d * d - lam * lam * psi * psi - lam * psi * d2;
            res.max_classical = std::max(res.max_classical, std::fabs(r));
        }

        const std::vector<double> w = index_weights(n);
        // integrands per node; at a cusp end psi' is infinite but the weighted
        // integrand has a finite limit, taken by extrapolation from the inside
        std::vector<std::array<double, kWeakModes>> g(n);
        std::vector<char> ok(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            const double psi = seg[j].psi, d = seg[j].dpsi, th = off + seg[j].theta;
            if (!std::isfinite(psi) || !std::isfinite(d)) continue;
            ok[j] = 1;
            const double base = -(2.0 * lam - 1.0) * d * d + lam * lam * psi * psi;
            for (int m = 0; m < kWeakModes; ++m)
                g[j][m] = J[j] * (base * test_function(m, th) - lam * psi * d * test_function_derivative(m, th));
        }
        auto extrapolate = [&](std::size_t j, int step) {
            for (int k = 1; k <= 5; ++k)
                if (!ok[j + step * k]) return;
            const double c[5] = {5.0, -10.0, 10.0, -5.0, 1.0};
            for (int m = 0; m < kWeakModes; ++m) {
                double v = 0.0;
                for (int k = 1; k <= 5; ++k) v += c[k - 1] * g[j + step * k][m];
                g[j][m] = v;
            }
            ok[j] = 1;
        };
        if (!ok[0]) extrapolate(0, 1);
        if (!ok[n - 1]) extrapolate(n - 1, -1);
        for (std::size_t j = 0; j < n; ++j) {
            if (!ok[j]) continue;
            for (int m = 0; m < kWeakModes; ++m) res.weak[m] += w[j] * g[j][m];
        }
        for (int m = 0; m < kWeakModes; ++m)
            res.weak[m] -= 2.0 * q * P * test_function_integral(m, off + seg.front().theta, off + seg.back().theta);
    }
    return res;
}

Residual ode_residual(const std::vector<std::vector<ProfilePoint>>& segments, double lam, double P) {
    std::vector<Segment> segs;
    for (const auto& seg : segments) {
        Segment s{seg.empty() ? 0.0 : seg.front().theta, seg};
        for (ProfilePoint& q : s.local) q.theta -= s.offset;
        segs.push_back(std::move(s));
    }
    return ode_residual(segs, lam, P);
}

Residual ode_residual(const std::vector<ProfilePoint>& profile, double lam, double P) {
    std::vector<std::vector<ProfilePoint>> segs(1);
    for (std::size_t j = 0; j < profile.size(); ++j) {
        if (j > 0 && !(profile[j].theta > profile[j - 1].theta)) segs.emplace_back();
        segs.back().push_back(profile[j]);
    }
    return ode_residual(segs, lam, P);
}

}  // namespace eulerhom
