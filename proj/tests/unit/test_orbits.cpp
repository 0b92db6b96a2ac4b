#include <algorithm>

#include "eulerhom/orbits.hpp"
#include "eulerhom/periods.hpp"
#include "helpers.hpp"

using namespace eulerhom;

namespace {

double max_drift(const Orbit& o) {
    const double P0 = pressure_hamiltonian(o.samples.front().s, o.params.lambda, o.params.B);
    double d = 0.0;
    for (const OrbitSample& s : o.samples) d = std::max(d, std::fabs(pressure_hamiltonian(s.s, o.params.lambda, o.params.B) - P0));
    return d;
}

Orbit arch(const FlowParams& p) {
    const Intercepts ic = find_intercepts(p);
    return integrate_orbit(p, {ic.x0, 0.0}, StopCondition::return_to_axis());
}

}  // namespace

TEST_CASE("find_intercepts examples") {
    Intercepts ic = find_intercepts(FlowParams(2.0, -1.0, 1.0));
    CHECK(ic.kind == InterceptKind::HyperbolicSingle);
    CHECK(ic.x0 == doctest::Approx((1.0 + std::sqrt(33.0)) / 8.0).epsilon(1e-13));
    ic = find_intercepts(FlowParams(2.0, 1.0 / 64.0, 1.0));
    CHECK(ic.kind == InterceptKind::EllipticPair);
    REQUIRE(ic.x1.has_value());
    CHECK(ic.x0 == doctest::Approx((1.0 - std::sqrt(0.5)) / 8.0).epsilon(1e-12));
    CHECK(*ic.x1 == doctest::Approx((1.0 + std::sqrt(0.5)) / 8.0).epsilon(1e-12));
    CHECK(ic.x0 < 0.125);
    CHECK(*ic.x1 > 0.125);
    ic = find_intercepts(FlowParams(2.0, 1.0 / 32.0, 1.0));
    CHECK(ic.kind == InterceptKind::Center);
    CHECK(ic.x0 == doctest::Approx(0.125).epsilon(1e-12));
    CHECK_ERROR(find_intercepts(FlowParams(2.0, 0.04, 1.0)), DomainError);
}

TEST_CASE("property: intercepts solve the level equation") {
    for (double lam : {1.3, 2.0, 3.0, 5.0})
        for (double P : {-10.0, -1.0, -1e-3}) {
            for (double B : {1.0, -1.0, 0.0}) {
                const FlowParams p(lam, P, B);
                const Intercepts ic = find_intercepts(p);
                CHECK(ic.kind == InterceptKind::HyperbolicSingle);
                CHECK(std::fabs(level_function(p, ic.x0)) <= 1e-12 * (1.0 + lam * lam * ic.x0 * ic.x0 + 2 * std::fabs(P)));
            }
        }
    for (double lam : {1.5, 3.0, 5.0})
        for (double f : {0.01, 0.5, 0.99}) {
            const FlowParams p(lam, f * steady_state(lam, 1.0).P_max, 1.0);
            const Intercepts ic = find_intercepts(p);
            REQUIRE(ic.kind == InterceptKind::EllipticPair);
            const double xs = steady_state(lam, 1.0).x_s;
            CHECK(ic.x0 < xs);
            CHECK(*ic.x1 > xs);
            CHECK(std::fabs(level_function(p, ic.x0)) <= 1e-12);
            CHECK(std::fabs(level_function(p, *ic.x1)) <= 1e-12);
        }
}

TEST_CASE("integrate_orbit examples") {
    Orbit o = integrate_orbit(FlowParams(2.0, 1.5, 8.0), {1.5, 0.0}, StopCondition::return_to_start());
    CHECK(o.closed);
    CHECK(o.measured_span == doctest::Approx(kPi).epsilon(1e-8));
    for (double lam : {0.75, 1.5, 2.0, 3.0}) {
        const double a = 0.8;
        o = integrate_orbit(FlowParams(lam, -0.5 * lam * lam * a * a, 0.0), {a, 0.0}, StopCondition::return_to_axis());
        CHECK(std::fabs(o.measured_span - kPi / lam) <= 1e-8);
    }
    o = integrate_orbit(FlowParams(2.0, 2.0, 8.0), {1.0, 0.0}, StopCondition::fixed_time(1.0));
    for (const OrbitSample& s : o.samples) {
        CHECK(std::fabs(s.s.x - 1.0) < 1e-12);
        CHECK(std::fabs(s.s.y) < 1e-12);
    }
}

TEST_CASE("integrate_orbit refuses the singular axis") {
    CHECK_ERROR(integrate_orbit(FlowParams(1.5, -1.0, 1.0), {0.0, std::sqrt(2.0)}, StopCondition::return_to_axis()),
                SingularEndpoint);
}

TEST_CASE("reconstructed hyperbolic arch") {
    const FlowParams p(2.0, -1.0, 1.0);
    const Orbit o = arch(p);
    const auto pr = reconstruct_profile(o);
    REQUIRE(pr.size() > 64);
    const double T = o.measured_span;
    CHECK(std::fabs(pr.front().psi) < 1e-8);
    CHECK(std::fabs(pr.back().psi) < 1e-8);
    CHECK(pr.back().theta == doctest::Approx(T));
    const double x0 = (1.0 + std::sqrt(33.0)) / 8.0;
    double top = 0.0;
    for (const ProfilePoint& q : pr) top = std::max(top, q.psi);
    CHECK(top == doctest::Approx(x0).epsilon(1e-10));
    for (std::size_t i = 0; i < pr.size(); ++i) {
        const ProfilePoint& a = pr[i];
        const ProfilePoint& b = pr[pr.size() - 1 - i];
        CHECK(std::fabs(a.theta + b.theta - T) < 1e-10);
        CHECK(std::fabs(a.psi - b.psi) < 1e-8);
    }
}

TEST_CASE("harmonic arch matches the closed form") {
    for (double lam : {0.75, 2.0, 3.5}) {
        const double P = -0.7;
        const Orbit o = arch(FlowParams(lam, P, 0.0));
        const double T = o.measured_span, A = std::sqrt(-2.0 * P) / lam;
        for (const ProfilePoint& q : reconstruct_profile(o)) CHECK(std::fabs(q.psi - A * std::cos(lam * (q.theta - T / 2))) < 1e-7);
    }
}

TEST_CASE("property: energy conservation and the endpoint slope law") {
    for (double lam : {2.0, 2.5, 3.0, 5.0})
        for (double P : {-4.0, -1.0, -0.05})
            for (double B : {1.0, -1.0}) {
                const FlowParams p(lam, P, B);
                const Orbit o = arch(p);
                CHECK(max_drift(o) <= 1e-9 * (1.0 + std::fabs(P)));
                const double s = std::sqrt(-2.0 * P);
                CHECK(std::fabs(o.samples.front().s.y - s) <= 1e-6);
                CHECK(std::fabs(std::fabs(o.samples.back().s.y) - s) <= 1e-6);
                CHECK(std::fabs(o.measured_span - span_any(p).T) <= 1e-7);
            }
}

TEST_CASE("property: elliptic orbit period matches quadrature") {
    for (double lam : {2.5, 3.0, 5.0})
        for (double f : {0.05, 0.5, 0.95}) {
            const FlowParams p(lam, f * steady_state(lam, 1.0).P_max, 1.0);
            const Intercepts ic = find_intercepts(p);
            const Orbit o = integrate_orbit(p, {*ic.x1, 0.0}, StopCondition::return_to_start());
            CHECK(max_drift(o) <= 1e-9 * (1.0 + std::fabs(p.P)));
            CHECK(std::fabs(o.measured_span - period_elliptic(lam, p.P).T) <= 1e-7);
        }
}
