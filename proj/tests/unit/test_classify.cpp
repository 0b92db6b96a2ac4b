#include <cmath>

#include "eulerhom/classify.hpp"
#include "helpers.hpp"

using namespace eulerhom;

namespace {

int integers_in(double lo, double hi) {
    int n = 0;
    for (int k = 0; k < 1000; ++k)
        if (k > lo && k < hi) ++n;
    return n;
}

}  // namespace

TEST_CASE("bernoulli examples") {
    CHECK(bernoulli(1.5, 0.0, 2.0, 1.5) == doctest::Approx(8.0));
    CHECK(bernoulli(1.0, -1.0, 2.0, 1.5) == doctest::Approx(8.0));
    CHECK(bernoulli(1.0, 0.0, 0.5, -0.25) == doctest::Approx(-0.25));
    CHECK_ERROR(bernoulli(0.0, 1.0, 2.0, 1.0), DomainError);
}

TEST_CASE("solution_type examples and sign rules") {
    CHECK(solution_type(FlowParams(2.0, 1.5, 8.0)).tag == SolutionTag::Elliptic);
    CHECK(solution_type(FlowParams(0.5, -0.25, -3.0 / 16.0)).tag == SolutionTag::Elliptic);
    CHECK(solution_type(FlowParams(2.0 / 3.0, -0.25, -3.0 / 16.0)).tag == SolutionTag::Elliptic);
    CHECK(solution_type(FlowParams(3.0, -1.0, 1.0)).tag == SolutionTag::Hyperbolic);
    CHECK(solution_type(FlowParams(3.0, 0.0, 1.0)).tag == SolutionTag::ParallelShear);
    CHECK(solution_type(FlowParams(1.0, 0.3, 0.1)).tag == SolutionTag::ParallelShear);
    CHECK(solution_type(FlowParams(3.0, steady_state(3.0, 1.0).P_max, 1.0)).tag == SolutionTag::Rotational);
    CHECK_ERROR(solution_type(FlowParams(3.0, 1.0, -1.0)), InconsistentParams);
    for (double lam : {0.3, 0.7, 1.5, 3.0})
        for (double P : {-2.0, -0.1, 0.1, 2.0})
            for (double B : {-1.0, 0.5, 3.0}) {
                SolutionType t;
                try {
                    t = solution_type(FlowParams(lam, P, B));
                } catch (const Error& e) {
                    // sign violation, or P beyond the center value
                    CHECK((e.kind() == ErrorKind::InconsistentParams || e.kind() == ErrorKind::DomainError));
                    continue;
                }
                if (lam > 1 && P <= 0) CHECK(t.tag != SolutionTag::Elliptic);
                if (lam < 1 && B >= 0) CHECK(t.tag != SolutionTag::Elliptic);
            }
}

TEST_CASE("count_elliptic by lambda range") {
    CHECK(count_elliptic(5.0).count == CountKind::Finite);
    CHECK(count_elliptic(5.0).n_solutions == 1);
    CHECK(count_elliptic(4.5).count == CountKind::Zero);
    CHECK(count_elliptic(13.0).n_solutions == 3);
    CHECK(count_elliptic(0.5).count == CountKind::Continuum);
    CHECK(count_elliptic(2.0).count == CountKind::Continuum);
    CHECK(count_elliptic(0.75).count == CountKind::Zero);
    CHECK(count_elliptic(0.76).count == CountKind::Unknown);
    CHECK(count_elliptic(4.0 / 3.0).count == CountKind::Zero);
    CHECK(count_elliptic(1.2).count == CountKind::Unknown);
    CHECK(count_elliptic(0.3).count == CountKind::Zero);
    CHECK_ERROR(count_elliptic(1.0), DomainError);
    for (double lam : {5.0, 6.0, 8.0, 13.0, 30.5}) CHECK(count_elliptic(lam).n_solutions == integers_in(2.0, std::sqrt(2 * lam)));
}

TEST_CASE("solve_elliptic examples") {
    const EllipticSolution s = solve_elliptic(5.0, 3);
    CHECK(s.P_star > 0.0);
    CHECK(s.P_star < steady_state(5.0, 1.0).P_max);
    CHECK(std::fabs(s.period - 2 * kPi / 3) <= 1e-10);
    CHECK(std::fabs(s.orbit.measured_span - 2 * kPi / 3) <= 1e-7);
    CHECK_ERROR(solve_elliptic(5.0, 4), NoSolution);
    CHECK(solve_elliptic(2.0, 2).continuum);
    const EllipticCatalog c = elliptic_catalog(13.0);
    REQUIRE(c.entries.size() == 3);
    for (const EllipticEntry& e : c.entries) CHECK(std::fabs(e.period - 2 * kPi / e.n) <= 1e-8);
}

TEST_CASE("solve_hyperbolic_span examples") {
    HyperbolicSolve h = solve_hyperbolic_span(2.0, PSign::Minus, 0.9 * kPi);
    CHECK(h.B_star > 0.0);
    CHECK(std::fabs(span_any(FlowParams(2.0, -1.0, h.B_star)).T - 0.9 * kPi) <= 1e-9);
    h = solve_hyperbolic_span(2.0, PSign::Minus, kPi / 2);
    CHECK(h.B_star == 0.0);
    h = solve_hyperbolic_span(2.0, PSign::Minus, 0.3 * kPi);
    CHECK(h.B_star < 0.0);
    CHECK(std::fabs(span_any(FlowParams(2.0, -1.0, h.B_star)).T - 0.3 * kPi) <= 1e-9);
    h = solve_hyperbolic_span(2.0 / 3.0, PSign::Plus, 2 * kPi / 3);
    CHECK(h.B_star > 0.0);
    CHECK(std::fabs(span_any(FlowParams(2.0 / 3.0, 1.0, h.B_star)).T - 2 * kPi / 3) <= 1e-9);
    CHECK_ERROR(solve_hyperbolic_span(2.0, PSign::Plus, 1.0), OutOfRange);
    CHECK_ERROR(solve_hyperbolic_span(0.4, PSign::Plus, 1.0), OutOfRange);
    CHECK_ERROR(solve_hyperbolic_span(2.0, PSign::Minus, kPi), OutOfRange);
}

TEST_CASE("property: Bernoulli constant along integrated arcs") {
    for (double lam : {1.5, 2.0, 3.0, 5.0})
        for (double B : {1.0, -1.0}) CHECK(bernoulli_variation(make_hyperbolic_arc(FlowParams(lam, -1.0, B))) <= 1e-9);
    for (double lam : {0.6, 2.0 / 3.0, 0.8})
        CHECK(bernoulli_variation(make_hyperbolic_arc(FlowParams(lam, 1.0, 0.7))) <= 1e-9);
    for (double lam : {3.0, 5.0})
        CHECK(bernoulli_variation(make_elliptic_arc(FlowParams(lam, 0.5 * steady_state(lam, 1.0).P_max, 1.0))) <= 1e-9);
}

TEST_CASE("hyperbolic ranges") {
    const auto r = hyperbolic_ranges(2.0);
    bool found = false;
    for (const HyperbolicRanges& h : r)
        if (h.P < 0) {
            found = true;
            CHECK(h.can_tile);
            for (const SpanRange& s : h.ranges)
                if (s.bsign == "B>0") {
                    CHECK(s.lo == doctest::Approx(kPi / 2));
                    CHECK(s.hi == doctest::Approx(kPi));
                }
        }
    CHECK(found);
    for (const HyperbolicRanges& h : hyperbolic_ranges(0.4))
        for (const SpanRange& s : h.ranges) CHECK_FALSE(s.exists);
}
