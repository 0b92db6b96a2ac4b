#include <random>

#include "eulerhom/core.hpp"
#include "helpers.hpp"

using namespace eulerhom;

TEST_CASE("FlowParams rejects nonpositive lambda") {
    CHECK_ERROR(FlowParams(0.0, 1.0, 1.0), DomainError);
    CHECK_ERROR(FlowParams(-1.0, 1.0, 1.0), DomainError);
    FlowParams p(2.5, 1.0, 1.0);
    CHECK(p.q() == 1.5);
    CHECK(FlowParams(1.0, 0.0, 0.0).is_degenerate());
}

TEST_CASE("PhaseState lives on the right half-plane") {
    CHECK_ERROR(PhaseState(-1e-3, 0.0), DomainError);
    CHECK(PhaseState(0.0, 1.0).x == 0.0);
}

TEST_CASE("pressure_hamiltonian examples") {
    CHECK(pressure_hamiltonian({1.0, 0.0}, 2.0, 8.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(pressure_hamiltonian({0.125, 0.0}, 2.0, 1.0) == doctest::Approx(0.03125).epsilon(1e-14));
    for (double lam : {0.3, 0.7, 1.5, 2.0, 4.0}) CHECK(std::fabs(pressure_hamiltonian({1.0, 0.0}, lam, lam * lam)) < 1e-14);
    CHECK_ERROR(pressure_hamiltonian({0.0, 1.0}, 0.5, 1.0), DomainError);
    CHECK(pressure_hamiltonian({0.0, 1.0}, 2.0, 1.0) == -0.5);
}

TEST_CASE("real_pow at zero") {
    CHECK(real_pow(0.0, 0.5) == 0.0);
    CHECK(real_pow(0.0, 0.0) == 1.0);
    CHECK_ERROR(real_pow(0.0, -0.5), DomainError);
    CHECK(real_pow(4.0, 0.5) == doctest::Approx(2.0));
}

TEST_CASE("steady_state examples") {
    SteadyStateInfo s = steady_state(2.0, 1.0);
    CHECK(s.x_s == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(s.P_max == doctest::Approx(0.03125).epsilon(1e-14));
    s = steady_state(2.0, 8.0);
    CHECK(s.x_s == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.P_max == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_ERROR(steady_state(1.0, 1.0), DomainError);
    CHECK_ERROR(steady_state(0.5, 1.0), DomainError);
}

TEST_CASE("steady state zeroes the vector field") {
    for (double lam : {1.2, 1.5, 2.0, 3.0, 5.0, 8.0})
        for (double B : {0.1, 1.0, 7.0}) {
            const SteadyStateInfo s = steady_state(lam, B);
            const auto [dx, dy] = phase_vector_field({s.x_s, 0.0}, lam, B);
            CHECK(dx == 0.0);
            CHECK(std::fabs(dy) <= 1e-12 * (1.0 + lam * lam * s.x_s));
            CHECK(pressure_hamiltonian({s.x_s, 0.0}, lam, B) == doctest::Approx(s.P_max).epsilon(1e-13));
        }
}

TEST_CASE("rescale_to_unit_P examples") {
    Rescaled r = rescale_to_unit_P(FlowParams(2.0, -4.0, 0.0));
    CHECK(r.params.P == -1.0);
    CHECK(r.params.B == 0.0);
    CHECK(r.scale == doctest::Approx(2.0));
    r = rescale_to_unit_P(FlowParams(2.0, 2.0, 8.0));
    CHECK(r.params.P == 1.0);
    CHECK(r.params.B == doctest::Approx(8.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK_ERROR(rescale_to_unit_P(FlowParams(2.0, 0.0, 1.0)), DomainError);
}

TEST_CASE("rescale_to_unit_B examples") {
    Rescaled r = rescale_to_unit_B(FlowParams(2.0, 2.0, 8.0));
    CHECK(r.params.B == 1.0);
    CHECK(r.params.P == doctest::Approx(0.03125).epsilon(1e-15));
    r = rescale_to_unit_B(FlowParams(3.0, 0.0, -27.0));
    CHECK(r.params.B == -1.0);
    CHECK(r.params.P == 0.0);
    CHECK_ERROR(rescale_to_unit_B(FlowParams(2.0, 1.0, 0.0)), DomainError);
}

TEST_CASE("conjugate examples") {
    FlowParams c = conjugate(FlowParams(2.0, 1.5, 8.0));
    CHECK(c.lambda == 0.5);
    CHECK(c.P == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(c.B == doctest::Approx(-3.0 / 16.0).epsilon(1e-15));
    c = conjugate(FlowParams(2.0, 0.0, 1.0));
    CHECK(c.lambda == 0.5);
    CHECK(c.P == doctest::Approx(-1.0 / 32.0).epsilon(1e-15));
    CHECK(c.B == 0.0);
}

TEST_CASE("vector field examples") {
    auto [dx, dy] = phase_vector_field({1.0, 0.0}, 2.0, 8.0);
    CHECK(dx == 0.0);
    CHECK(std::fabs(dy) < 1e-14);
    std::tie(dx, dy) = phase_vector_field({0.7, -0.3}, 3.0, 0.0);
    CHECK(dx == -0.3);
    CHECK(dy == doctest::Approx(-9.0 * 0.7));
    CHECK_ERROR(phase_vector_field({0.0, 1.0}, 1.5, 1.0), DomainError);
}

TEST_CASE("property: random round trips, involution and Hamiltonian exactness") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> L(0.2, 6.0), U(-5.0, 5.0), X(0.05, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double lam = L(rng);
        if (lam == 1.0) continue;
        const FlowParams p(lam, U(rng), U(rng));
        const FlowParams cc = conjugate(conjugate(p));
        CHECK(std::fabs(cc.lambda - p.lambda) <= 1e-14 * p.lambda);
        CHECK(std::fabs(cc.P - p.P) <= 1e-14 * (1.0 + std::fabs(p.P)));
        CHECK(std::fabs(cc.B - p.B) <= 1e-14 * (1.0 + std::fabs(p.B)));
        if (p.P != 0.0) {
            const Rescaled r = rescale_to_unit_P(p);
            const FlowParams back = unscale(r.params, r.scale);
            CHECK(std::fabs(back.P - p.P) <= 1e-14 * std::fabs(p.P));
            CHECK(std::fabs(back.B - p.B) <= 1e-14 * (1.0 + std::fabs(p.B)));
        }
        if (p.B != 0.0) {
            const Rescaled r = rescale_to_unit_B(p);
            const FlowParams back = unscale(r.params, r.scale);
            CHECK(std::fabs(back.P - p.P) <= 1e-14 * (1.0 + std::fabs(p.P)));
            CHECK(std::fabs(back.B - p.B) <= 1e-14 * std::fabs(p.B));
        }
        // dP/dt along the flow: grad P . (x', y')
        const PhaseState s(X(rng), U(rng));
        const auto [dx, dy] = phase_vector_field(s, lam, p.B);
        // fourth-order centered differences
        auto d = [](auto&& F, double h) { return (F(-2 * h) - 8 * F(-h) + 8 * F(h) - F(2 * h)) / (12 * h); };
        const double Px = d([&](double e) { return pressure_hamiltonian({s.x + e, s.y}, lam, p.B); }, 1e-3 * s.x);
        const double Py = d([&](double e) { return pressure_hamiltonian({s.x, s.y + e}, lam, p.B); }, 1e-3 * (1.0 + std::fabs(s.y)));
        const double scale = std::fabs(Px * dx) + std::fabs(Py * dy) + 1.0;
        CHECK(std::fabs(Px * dx + Py * dy) <= 1e-8 * scale);
    }
}
