#include <fstream>

#include "eulerhom/config.hpp"
#include "eulerhom/serialize.hpp"
#include "helpers.hpp"

using namespace eulerhom;

TEST_CASE("config defaults and overrides") {
    const RunConfig d;
    CHECK(d.quadrature_tol == 1e-10);
    CHECK(d.root_tol == 1e-10);
    CHECK(d.ode_tol == 1e-10);
    CHECK(d.points_per_arc == 512);
    const RunConfig c = config_from_json(R"({"points_per_arc": 256, "format": "csv", "root_tol": 1e-9})");
    CHECK(c.points_per_arc == 256);
    CHECK(c.format == OutputFormat::CSV);
    CHECK(c.root_tol == 1e-9);
    CHECK(c.ode_tol == 1e-10);
    CHECK(c.solve_options().root_tol == 1e-9);
    CHECK_THROWS_AS(config_from_json(R"({"no_such_key": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"points_per_arc": -3})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json("{"), std::invalid_argument);
    const RunConfig r = config_from_json(config_to_json(c));
    CHECK(r.points_per_arc == c.points_per_arc);
    CHECK(r.format == c.format);
    CHECK(r.seed == c.seed);
}

TEST_CASE("property: JSON round trip of solution documents") {
    std::vector<GlobalSolution> sols = {equal_arcs(2.0 / 3.0, 1.0, 3), equal_arcs(2.0, -1.0, 4),
                                        family_global(ExplicitFamily::lambda2(1.0, 0.5)),
                                        family_global(ExplicitFamily::lambda_half(1.0, 0.5))};
    const EllipticSolution e = solve_elliptic(5.0, 3);
    sols.push_back(elliptic_global(make_elliptic_arc(FlowParams(5.0, e.P_star, 1.0)), 3));
    for (const GlobalSolution& g : sols) {
        SolutionDocument doc{g, diagnose(g)};
        const std::string text = to_json(doc);
        const SolutionDocument back = from_json(text);
        CHECK(same_data(g, back.solution));
        REQUIRE(back.diagnostics.has_value());
        CHECK(same_data(*doc.diagnostics, *back.diagnostics));
        CHECK(to_json(back) == text);
        // rebuilt shapes reproduce the diagnostics
        const Diagnostics d = diagnose(back.solution);
        CAPTURE(g.lambda);
        CHECK(d.residual_max <= 1e-7);
        CHECK(std::fabs(d.h1_norm - doc.diagnostics->h1_norm) <= 1e-6 * doc.diagnostics->h1_norm);
    }
}

TEST_CASE("non-finite values survive serialization") {
    const GlobalSolution g = equal_arcs(2.0 / 3.0, 1.0, 3);
    const std::string text = to_json({g, std::nullopt});
    CHECK(text.find("\"Infinity\"") != std::string::npos);
    const SolutionDocument back = from_json(text);
    CHECK(std::isinf(back.solution.pieces[0].arc.endpoint_slope));
    CHECK_FALSE(back.diagnostics.has_value());
}

TEST_CASE("malformed documents are domain errors") {
    CHECK_ERROR(from_json("{}"), DomainError);
    CHECK_ERROR(from_json("not json"), DomainError);
    CHECK_ERROR(from_json(R"({"schema_version": 99, "params": {"lambda": 2, "P": 1}, "pieces": []})"), DomainError);
}
