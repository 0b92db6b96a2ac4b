#include <algorithm>
#include <sstream>

#include "eulerhom/assemble.hpp"
#include "helpers.hpp"

using namespace eulerhom;

namespace {

double weak_max(const std::vector<double>& w) {
    double m = 0.0;
    for (double x : w) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace

TEST_CASE("graded nodes are mirrored exactly") {
    for (int k : {1, 3, 6}) {
        const auto t = graded_nodes(2.5, 128, k);
        REQUIRE(t.size() == 129);
        CHECK(t.front() == 0.0);
        CHECK(t.back() == 2.5);
        for (std::size_t j = 0; j < t.size(); ++j) CHECK(t[j] + t[t.size() - 1 - j] == doctest::Approx(2.5).epsilon(1e-15));
        for (std::size_t j = 1; j < t.size(); ++j) CHECK(t[j] > t[j - 1]);
    }
    CHECK(grading_exponent(2.0) == 1);
    CHECK(grading_exponent(1.0) == 1);
    CHECK(grading_exponent(3.0) == 3);
    CHECK(grading_exponent(2.0 / 3.0) == 3);
    CHECK(grading_exponent(0.75) == 4);
}

TEST_CASE("local arcs: symmetry, positivity, slopes") {
    for (const FlowParams& p : {FlowParams(2.0, -1.0, 1.0), FlowParams(3.0, -1.0, -0.5), FlowParams(2.0 / 3.0, 1.0, 0.4),
                                FlowParams(1.5, -2.0, 0.0)}) {
        const LocalArc a = make_hyperbolic_arc(p);
        const auto& pr = a.profile;
        CHECK(pr.front().psi == 0.0);
        CHECK(pr.back().psi == 0.0);
        for (std::size_t j = 1; j + 1 < pr.size(); ++j) CHECK(pr[j].psi > 0.0);
        for (std::size_t j = 0; j < pr.size(); ++j) CHECK(std::fabs(pr[j].psi - pr[pr.size() - 1 - j].psi) <= 1e-7);
        if (p.lambda > 1) CHECK(a.endpoint_slope == doctest::Approx(std::sqrt(-2.0 * p.P)));
        else CHECK(std::isinf(a.endpoint_slope));
        CHECK(a.span == doctest::Approx(span_any(p).T).epsilon(1e-12));
        for (double d : {1e-9, 1e-3, 0.3}) {
            const ProfilePoint l = a.shape->at(d), r = a.shape->at_from_end(d);
            CHECK(r.psi == doctest::Approx(l.psi).epsilon(1e-12));
            CHECK(r.dpsi == doctest::Approx(-l.dpsi).epsilon(1e-12));
        }
    }
}

TEST_CASE("stitch examples") {
    const double P0 = -0.8;
    const GlobalSolution g = stitch(2.0, P0, {{0, 1}, {0, -1}, {0, 1}, {0, -1}});
    CHECK(std::fabs(g.total_span() - kTwoPi) <= 1e-9);
    CHECK(g.smoothness == Smoothness::C1);
    const double A = std::sqrt(-2 * P0) / 2;
    for (const auto& seg : g.segments())
        for (const ProfilePoint& q : seg) CHECK(std::fabs(q.psi - A * std::cos(2 * q.theta - kPi / 2)) <= 1e-9);

    const HyperbolicSolve a = solve_hyperbolic_span(3.0, PSign::Minus, 0.6 * kPi);
    const HyperbolicSolve b = solve_hyperbolic_span(3.0, PSign::Minus, 0.4 * kPi);
    const GlobalSolution h = stitch(3.0, -1.0, {{a.B_star, 1}, {b.B_star, -1}, {a.B_star, 1}, {b.B_star, -1}});
    CHECK(std::fabs(h.total_span() - kTwoPi) <= 1e-9);
    CHECK(h.smoothness == Smoothness::C1);
    const GlobalSolution v = stitch(3.0, -1.0, {{a.B_star, 1}, {b.B_star, 1}, {a.B_star, 1}, {b.B_star, 1}});
    CHECK(v.smoothness == Smoothness::VortexSheet);

    const HyperbolicSolve c = solve_hyperbolic_span(2.0, PSign::Minus, 0.99 * kPi);
    CHECK_ERROR(stitch(2.0, -1.0, {{c.B_star, 1}, {c.B_star, -1}}), SpanMismatch);
    try {
        stitch(2.0, -1.0, {{c.B_star, 1}, {c.B_star, -1}});
    } catch (const SpanMismatchError& e) {
        CHECK(e.gap() == doctest::Approx(-0.02 * kPi).epsilon(1e-6));
    }
    CHECK_ERROR(equal_arcs(2.0, -1.0, 2), SpanMismatch);
    CHECK_ERROR(stitch(3.0, 1.0, {{1.0, 1}}), InadmissibleArc);
    StitchOptions rep;
    rep.auto_repair = true;
    const GlobalSolution r = stitch(2.0, -1.0, {{c.B_star, 1}, {0.0, -1}, {0.0, 1}}, rep);
    CHECK(std::fabs(r.total_span() - kTwoPi) <= 1e-9);
}

TEST_CASE("property: assembled solutions are weak solutions with vanishing flux") {
    struct Case { double lam, P; int m; };
    for (const Case& c : {Case{2.0 / 3.0, 1.0, 3}, Case{0.6, 1.0, 4}, Case{0.8, 1.0, 3}, Case{2.0, -1.0, 4}, Case{3.0, -1.0, 5},
                          Case{1.5, -2.0, 3}, Case{1.0, -1.0, 2}}) {
        CAPTURE(c.lam);
        const GlobalSolution g = equal_arcs(c.lam, c.P, c.m);
        CHECK(std::fabs(g.total_span() - kTwoPi) <= 1e-9);
        for (const Piece& pc : g.pieces) CHECK(pc.arc.params.P == c.P);
        CHECK(weak_max(weak_residual(g)) <= 1e-7);
        CHECK(energy_flux(g).scaled <= 1e-8);
        if (c.lam > 1)
            for (const Piece& pc : g.pieces) {
                CHECK(std::fabs(std::fabs(pc.arc.profile.front().dpsi) - std::sqrt(-2 * c.P)) <= 1e-6);
                CHECK(std::fabs(std::fabs(pc.arc.profile.back().dpsi) - std::sqrt(-2 * c.P)) <= 1e-6);
            }
    }
}

TEST_CASE("property: H1 norm is stable under refinement") {
    for (double lam : {0.6, 2.0 / 3.0, 0.9, 2.0, 3.0}) {
        const double P = lam < 1 ? 1.0 : -1.0;
        StitchOptions lo, hi;
        lo.points_per_arc = 256;
        hi.points_per_arc = 2048;
        const GlobalSolution a = equal_arcs(lam, P, 4, lo), b = equal_arcs(lam, P, 4, hi);
        const double ref = h1_norm(b);
        CHECK(std::isfinite(ref));
        CHECK(std::fabs(h1_norm(a) - ref) <= 1e-6 * ref);
        CHECK(std::fabs(profile_h1_norm(b) - ref) <= 1e-6 * ref);
    }
}

TEST_CASE("flux examples") {
    const GlobalSolution f = family_global(ExplicitFamily::lambda2(1.0, 0.5));
    CHECK(std::fabs(energy_flux(f).flux) <= 1e-10);
    const GlobalSolution g = equal_arcs(2.0 / 3.0, 1.0, 3);
    CHECK(energy_flux(corrupt_piece(g, 0)).scaled > 1e-4);
    CHECK(weak_max(weak_residual(corrupt_piece(g, 0))) > 1e-4);
}

TEST_CASE("elliptic global solution tiles the circle") {
    const EllipticSolution s = solve_elliptic(5.0, 3);
    const LocalArc arc = make_elliptic_arc(FlowParams(5.0, s.P_star, 1.0));
    const GlobalSolution g = elliptic_global(arc, 3);
    CHECK(std::fabs(g.total_span() - kTwoPi) <= 1e-8);
    const Residual r = solution_residual(g);
    CHECK(r.max_classical <= 1e-6);
    CHECK(weak_max(r.weak) <= 1e-7);
}

TEST_CASE("field_at examples") {
    const GlobalSolution l2 = family_global(ExplicitFamily::lambda2(1.0, 0.5));
    FieldSample s = field_at(l2, 1.0, 0.0);
    CHECK(s.stream == doctest::Approx(1.5));
    CHECK(s.u_tau == doctest::Approx(3.0));
    CHECK(std::fabs(s.u_nu) < 1e-12);
    const GlobalSolution rot = family_global(ExplicitFamily::rotational(2.0, 2.0));
    for (double r : {0.5, 2.0})
        for (double th : {0.1, 3.0}) {
            s = field_at(rot, r, th);
            CHECK(std::fabs(s.u_nu) < 1e-12);
            CHECK(s.u_tau == doctest::Approx(2 * r));
            CHECK(s.stream == doctest::Approx(r * r));
            CHECK(s.pressure == doctest::Approx(2 * r * r));
            CHECK(s.vorticity == doctest::Approx(4.0));
        }
    s = field_at(point_vortex(3.0, 4.0), 2.0, 0.7);
    CHECK(std::hypot(s.u_x, s.u_y) == doctest::Approx(2.5));
    const GlobalSolution cusp = equal_arcs(2.0 / 3.0, 1.0, 3);
    CHECK_ERROR(field_at(cusp, 1.0, cusp.pieces[1].offset), OnSingularRay);
}

TEST_CASE("export_grid examples") {
    const GlobalSolution rot = family_global(ExplicitFamily::rotational(2.0, 2.0));
    GridSpec gs{0.5, 1.0, 2, 2};
    const auto cells = export_grid(rot, gs);
    CHECK(cells.size() == 4);
    for (const GridCell& c : cells) {
        CHECK(c.valid);
        CHECK(std::fabs(c.s.u_nu) < 1e-12);
    }
    std::ostringstream os;
    write_grid_csv(os, cells);
    const std::string csv = os.str();
    CHECK(csv.rfind("r,theta,x,y,u_x,u_y,psi_value,stream,vorticity,pressure", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    const GlobalSolution h = stitch(2.0, -1.0, {{0, 1}, {0, -1}, {0, 1}, {0, -1}});
    const auto hc = export_grid(h, {1.0, 1.0 + 1e-9, 2, 8});
    CHECK(hc[1].s.stream > 0.0);
    CHECK(hc[3].s.stream < 0.0);

    // a vortex sheet: tangential velocity jumps across the junction ray
    const HyperbolicSolve a = solve_hyperbolic_span(3.0, PSign::Minus, 0.5 * kPi);
    const GlobalSolution v = stitch(3.0, -1.0, {{a.B_star, 1}, {a.B_star, 1}, {a.B_star, 1}, {a.B_star, 1}});
    const double j = v.pieces[1].offset, e = 1e-7;
    CHECK(std::fabs(field_at(v, 1.0, j - e).u_nu - field_at(v, 1.0, j + e).u_nu) > 1.0);
}

TEST_CASE("sampled shapes: quintic with the ODE, cubic without") {
    const ExplicitFamily f = ExplicitFamily::lambda2(1.0, 0.5);
    auto err = [&](int n, bool ode) {
        const auto sh = sampled_shape(sample_family(f, n), true, ode ? std::optional<FlowParams>(f.params) : std::nullopt);
        double e = 0.0;
        for (int i = 0; i < 997; ++i) {
            const double th = kTwoPi * (i + 0.37) / 997;
            e = std::max(e, std::fabs(sh->at(th).dpsi - evaluate_family(f, th).second));
        }
        return e;
    };
    const double q1 = err(64, true), q2 = err(128, true), c1 = err(64, false), c2 = err(128, false);
    CHECK(q1 / q2 > 25.0);
    CHECK(c1 / c2 > 6.0);
    CHECK(c1 / c2 < 12.0);
    CHECK(err(512, true) < 1e-10);
}
