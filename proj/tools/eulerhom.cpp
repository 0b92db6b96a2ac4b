#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eulerhom/acceptance.hpp"
#include "eulerhom/assemble.hpp"
#include "eulerhom/classify.hpp"
#include "eulerhom/config.hpp"
#include "eulerhom/errors.hpp"
#include "eulerhom/periods.hpp"
#include "eulerhom/serialize.hpp"
#include "json.hpp"

using namespace eulerhom;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

json num(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    return v;
}

std::string fmt17(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw UsageError("cannot write " + cfg.output);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

// Options shared by construct, flux and export-field.
struct BuildFlags {
    std::string input;
    double lambda = std::numeric_limits<double>::quiet_NaN();
    double pressure = std::numeric_limits<double>::quiet_NaN();
    int equal_arcs = 0;
    int elliptic_n = 0;
    std::vector<std::string> arcs;  // "B,sign"
    std::string family;
    double gamma1 = 1.0, gamma2 = 0.5;
    double offset = 0.0;
    bool auto_repair = false;
    int max_pieces = 64;
};

void add_build_flags(CLI::App* sub, BuildFlags& b) {
    sub->add_option("--input", b.input, "Solution JSON written by construct");
    sub->add_option("--lambda", b.lambda, "Homogeneity degree");
    sub->add_option("-P,--pressure", b.pressure, "Pressure constant P");
    sub->add_option("--equal-arcs", b.equal_arcs, "Number of equal-span hyperbolic arcs")->check(CLI::PositiveNumber);
    sub->add_option("--elliptic-n", b.elliptic_n, "Periods per circle of the elliptic solution")->check(CLI::PositiveNumber);
    sub->add_option("--arc", b.arcs, "Hyperbolic arc as B,sign (repeatable, laid out in order)");
    sub->add_option("--family", b.family, "Explicit family: rotational, lambda2, lambda-half")
        ->check(CLI::IsMember({"rotational", "lambda2", "lambda-half"}));
    sub->add_option("--gamma1", b.gamma1, "First family coefficient");
    sub->add_option("--gamma2", b.gamma2, "Second family coefficient");
    sub->add_option("--offset", b.offset, "Rotation of the first junction");
    sub->add_flag("--auto-repair", b.auto_repair, "Re-solve the last arc's B to close a span gap");
    sub->add_option("--max-pieces", b.max_pieces, "Cap on the number of arcs")->check(CLI::PositiveNumber);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ArcSpec parse_arc(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--arc expects B,sign but got " + s);
    try {
        const double B = std::stod(s.substr(0, comma));
        const int sign = std::stoi(s.substr(comma + 1));
        if (sign != 1 && sign != -1) throw UsageError("arc sign must be 1 or -1");
        return {B, sign};
    } catch (const std::logic_error&) {
        throw UsageError("--arc expects B,sign but got " + s);
    }
}

GlobalSolution build_solution(const BuildFlags& b, const RunConfig& cfg) {
    if (!b.input.empty()) return from_json(read_file(b.input)).solution;
    const int modes = (b.equal_arcs > 0) + (b.elliptic_n > 0) + (!b.arcs.empty()) + (!b.family.empty());
    if (modes != 1) throw UsageError("give exactly one of --input, --equal-arcs, --elliptic-n, --arc, --family");
    const bool have_P = !std::isnan(b.pressure);
    if (std::isnan(b.lambda) && b.family != "lambda2" && b.family != "lambda-half") throw UsageError("--lambda is required");

    StitchOptions opt;
    opt.points_per_arc = cfg.points_per_arc;
    opt.offset = b.offset;
    opt.auto_repair = b.auto_repair;
    opt.max_pieces = static_cast<std::size_t>(b.max_pieces);
    opt.solve = cfg.solve_options();

    if (b.equal_arcs > 0) {
        if (!have_P) throw UsageError("--equal-arcs needs --pressure");
        if (static_cast<std::size_t>(b.equal_arcs) > opt.max_pieces)
            fail(ErrorKind::DomainError, "arc count exceeds --max-pieces");
        return equal_arcs(b.lambda, b.pressure, b.equal_arcs, opt);
    }
    if (!b.arcs.empty()) {
        if (!have_P) throw UsageError("--arc needs --pressure");
        std::vector<ArcSpec> specs;
        for (const auto& s : b.arcs) specs.push_back(parse_arc(s));
        return stitch(b.lambda, b.pressure, specs, opt);
    }
    if (b.elliptic_n > 0) {
        if (have_P) throw UsageError("--elliptic-n fixes B = 1 and solves for P; do not pass --pressure");
        const EllipticSolution e = solve_elliptic(b.lambda, b.elliptic_n, opt.solve);
        if (e.continuum)
            std::cerr << "note: every P in (0, P_max) has period pi at lambda = 2; using P = " << e.P_star << "\n";
        return elliptic_global(make_elliptic_arc(FlowParams(b.lambda, e.P_star, 1.0), opt.solve.ode), b.elliptic_n,
                               b.offset);
    }
    if (b.family == "rotational") {
        if (!have_P) throw UsageError("--family rotational needs --pressure");
        return family_global(ExplicitFamily::rotational(b.lambda, b.pressure), cfg.points_per_arc);
    }
    if (b.family == "lambda2") return family_global(ExplicitFamily::lambda2(b.gamma1, b.gamma2), cfg.points_per_arc);
    return family_global(ExplicitFamily::lambda_half(b.gamma1, b.gamma2), cfg.points_per_arc);
}

json report_json(const GlobalSolution& g, const Diagnostics& d) {
    json pieces = json::array();
    for (const Piece& pc : g.pieces)
        pieces.push_back({{"B", num(pc.arc.params.B)}, {"sign", pc.sign}, {"offset", num(pc.offset)}, {"span", num(pc.arc.span)}});
    const Flux f = energy_flux(g);
    return {{"params", {{"lambda", num(g.lambda)}, {"P", num(g.P)}}},
            {"smoothness", smoothness_name(g.smoothness)},
            {"pieces", pieces},
            {"flux", num(f.flux)},
            {"flux_scale", num(f.scale)},
            {"flux_scaled", num(f.scaled)},
            {"residual_max", num(d.residual_max)},
            {"h1_norm", num(d.h1_norm)}};
}

// ---- classify ----

int cmd_classify(double lam, const RunConfig& cfg) {
    if (!(lam > 0.0)) throw UsageError("--lambda must be positive");
    json j = {{"lambda", lam}};
    json notes = json::array();
    json ell;
    if (lam == 1.0) {
        ell = {{"count", "none"}, {"n_solutions", 0}};
        notes.push_back("all solutions are parallel shear flows");
    } else {
        const EllipticCatalog cat = elliptic_catalog(lam);
        ell = {{"count", count_name(cat.count)}, {"n_solutions", cat.n_solutions}};
        json entries = json::array();
        for (const EllipticEntry& e : cat.entries)
            entries.push_back({{"n", e.n}, {"P_star", num(e.P_star)}, {"period", num(e.period)}});
        ell["entries"] = entries;
        if (cat.count == CountKind::Unknown)
            notes.push_back(
                "elliptic count undecided: the period function is not shown to be monotone for lambda in (3/4,1) or (1,4/3), "
                "so the counting argument does not apply");
        if (cat.count == CountKind::Continuum)
            notes.push_back(lam == 2.0 ? "every 0 < P < P_max gives period pi, so each such orbit closes twice on the circle"
                                       : "the conjugate of the lambda = 2 continuum: every admissible orbit closes on the circle");
    }
    j["elliptic"] = ell;
    json hyp = json::array();
    for (const HyperbolicRanges& h : hyperbolic_ranges(lam)) {
        json rs = json::array();
        for (const SpanRange& r : h.ranges)
            rs.push_back({{"bsign", r.bsign}, {"exists", r.exists}, {"closed_point", r.closed_point}, {"lo", num(r.lo)}, {"hi", num(r.hi)}});
        hyp.push_back({{"P", h.P}, {"ranges", rs}, {"can_tile", h.can_tile}});
    }
    j["hyperbolic"] = hyp;
    if (lam <= 0.5) notes.push_back("no hyperbolic H1 solutions for lambda <= 1/2; every H1 solution is elliptic");
    if (lam > 1.0) notes.push_back("no hyperbolic solutions for P > 0");
    json fam = json::array();
    if (lam != 1.0) fam.push_back("rotational");
    fam.push_back("parallel-shear");
    if (lam != 1.0) fam.push_back("harmonic (B = 0)");
    if (lam == 2.0) fam.push_back("lambda2");
    if (lam == 0.5) fam.push_back("lambda-half");
    j["families"] = fam;
    j["notes"] = notes;

    if (cfg.format == OutputFormat::JSON) {
        emit(cfg, j.dump(2));
        return kExitOk;
    }
    std::ostringstream os;
    os << "section,key,value\n";
    os << "elliptic,count," << ell["count"].get<std::string>() << "\n";
    os << "elliptic,n_solutions," << ell["n_solutions"].get<int>() << "\n";
    if (ell.contains("entries"))
        for (const auto& e : ell["entries"])
            os << "elliptic,P_star(n=" << e["n"].get<int>() << ")," << fmt17(e["P_star"].get<double>()) << "\n";
    for (const auto& h : hyp)
        for (const auto& r : h["ranges"])
            os << "hyperbolic,P=" << h["P"].get<double>() << " " << r["bsign"].get<std::string>() << ","
               << (r["exists"].get<bool>() ? "(" + fmt17(r["lo"].get<double>()) + " " + fmt17(r["hi"].get<double>()) + ")" : "none")
               << "\n";
    for (const auto& n : notes) os << "note,," << '"' << n.get<std::string>() << '"' << "\n";
    emit(cfg, os.str());
    return kExitOk;
}

// ---- period-scan ----

int cmd_period_scan(double lam, const std::string& region, const std::string& bsign, double p_lo, double p_hi, int n,
                    const RunConfig& cfg) {
    if (!(lam > 0.0)) throw UsageError("--lambda must be positive");
    if (n < 2) throw UsageError("--n must be at least 2");
    double B;
    std::vector<double> Ps;
    if (region == "elliptic") {
        if (lam == 1.0) fail(ErrorKind::DomainError, "lambda = 1 has no elliptic orbits");
        B = lam > 1.0 ? 1.0 : -1.0;
        const double pc = center(lam, B).P_max;
        const double hi = std::isnan(p_hi) ? pc : p_hi;
        const double lo = std::isnan(p_lo) ? 0.0 : p_lo;
        // from the center outward: P descending, end points excluded
        for (int k = 1; k <= n; ++k) Ps.push_back(hi - (hi - lo) * k / (n + 1));
    } else {
        B = bsign == "minus" ? -1.0 : bsign == "zero" ? 0.0 : 1.0;
        const double P0 = lam > 1.0 ? -1.0 : 1.0;
        const double lo = std::isnan(p_lo) ? 1e-3 * P0 : p_lo;
        const double hi = std::isnan(p_hi) ? 1e3 * P0 : p_hi;
        if (lo == 0.0 || hi == 0.0 || (lo > 0.0) != (hi > 0.0)) throw UsageError("hyperbolic P range must not contain 0");
        // geometric in |P|, from lo towards hi
        for (int k = 0; k < n; ++k) Ps.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
    }
    SpanOptions so;
    so.accept_error = cfg.quadrature_tol;
    std::vector<double> T, E;
    for (double P : Ps) {
        const SpanResult r = span_any(FlowParams(lam, P, B), so);
        T.push_back(r.T);
        E.push_back(r.est_error);
    }
    const Trend tr = trend_of(T, 1e-9);
    if (cfg.format == OutputFormat::JSON) {
        json rows = json::array();
        for (std::size_t i = 0; i < Ps.size(); ++i) rows.push_back({{"P", num(Ps[i])}, {"T", num(T[i])}, {"est_error", num(E[i])}});
        json j = {{"lambda", lam}, {"region", region}, {"B", B}, {"rows", rows}, {"trend", trend_name(tr)},
                  {"monotonicity_proved", lam > 1.0 && monotonicity_proved(lam)}};
        emit(cfg, j.dump(2));
    } else {
        std::ostringstream os;
        os << "P,T,est_error\n";
        for (std::size_t i = 0; i < Ps.size(); ++i) os << fmt17(Ps[i]) << ',' << fmt17(T[i]) << ',' << fmt17(E[i]) << "\n";
        os << "# trend: " << trend_name(tr) << "\n";
        emit(cfg, os.str());
    }
    return kExitOk;
}

// ---- phase-portrait ----

int cmd_phase_portrait(double lam, double B, std::vector<double> levels, const RunConfig& cfg) {
    if (!(lam > 0.0) || lam == 1.0) throw UsageError("--lambda must be positive and not 1");
    json curves = json::array();
    json j = {{"lambda", lam}, {"B", B}};
    if ((lam - 1.0) * B > 0.0) {
        const SteadyStateInfo c = center(lam, B);
        j["center"] = {{"x", num(c.x_s)}, {"P", num(c.P_max)}};
    }
    if (levels.empty()) {
        if (lam > 1.0 && B > 0.0) {
            const double pm = center(lam, B).P_max;
            levels = {0.8 * pm, 0.6 * pm, 0.4 * pm, 0.2 * pm, 0.0, -0.5 * pm, -pm, -2.0 * pm};
        } else {
            levels = {2.0, 1.0, 0.5, 0.0, -0.5, -1.0, -2.0};
        }
    }
    OdeOptions ode;
    ode.rtol = cfg.ode_tol;
    for (double P : levels) {
        json cv = {{"P", num(P)}};
        try {
            const FlowParams p(lam, P, B);
            const SolutionType t = solution_type(p);
            LocalArc arc = t.tag == SolutionTag::Elliptic ? make_elliptic_arc(p, ode) : make_hyperbolic_arc(p, cfg.points_per_arc);
            json pts = json::array();
            for (const ProfilePoint& q : arc.profile) pts.push_back({num(q.psi), num(q.dpsi)});
            cv["kind"] = tag_name(t.tag);
            cv["span"] = num(arc.span);
            cv["points"] = pts;
        } catch (const Error& e) {
            if (e.category() != ErrorCategory::Domain) throw;
            cv["kind"] = "none";
            cv["reason"] = e.what();
        }
        curves.push_back(cv);
    }
    j["curves"] = curves;
    if (cfg.format == OutputFormat::JSON) {
        emit(cfg, j.dump(2));
    } else {
        std::ostringstream os;
        os << "P,kind,x,y\n";
        for (const auto& cv : curves) {
            if (!cv.contains("points")) continue;
            for (const auto& pt : cv["points"]) {
                auto s = [](const json& v) { return v.is_string() ? v.get<std::string>() : fmt17(v.get<double>()); };
                os << s(cv["P"]) << ',' << cv["kind"].get<std::string>() << ',' << s(pt[0]) << ',' << s(pt[1]) << "\n";
            }
        }
        emit(cfg, os.str());
    }
    return kExitOk;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Homogeneous stationary Euler flows: classification, periods, stitched solutions and fields"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, format, output;
    int points = 0;
    double qtol = 0, rtol = 0, otol = 0;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "JSON file with RunConfig keys");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "JSON", "CSV"}));
    app.add_option("-o,--output", output, "Output path (default: standard output)");
    app.add_option("--points-per-arc", points, "Samples per arc")->check(CLI::Range(16, 1 << 20));
    app.add_option("--quadrature-tol", qtol, "Accepted quadrature error estimate")->check(CLI::PositiveNumber);
    app.add_option("--root-tol", rtol, "Accepted |T - target| in root finding")->check(CLI::PositiveNumber);
    app.add_option("--ode-tol", otol, "Relative ODE tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for randomized checks");

    double lam = std::numeric_limits<double>::quiet_NaN();

    auto* classify = app.add_subcommand("classify", "Elliptic catalog, hyperbolic span ranges and explicit families");
    classify->add_option("--lambda", lam, "Homogeneity degree")->required();

    std::string region = "elliptic", bsign = "plus";
    double p_lo = std::numeric_limits<double>::quiet_NaN(), p_hi = p_lo;
    int n_points = 20;
    auto* scan = app.add_subcommand("period-scan", "Period or life-span over a range of P, with the trend");
    scan->add_option("--lambda", lam, "Homogeneity degree")->required();
    scan->add_option("--region", region, "elliptic or hyperbolic")->check(CLI::IsMember({"elliptic", "hyperbolic"}));
    scan->add_option("--bsign", bsign, "Sign of B for hyperbolic scans")->check(CLI::IsMember({"plus", "minus", "zero"}));
    scan->add_option("--p-min", p_lo, "First end of the P range");
    scan->add_option("--p-max", p_hi, "Second end of the P range");
    scan->add_option("--n", n_points, "Number of P values");

    BuildFlags bc, bf, be;
    std::string grid_path;
    GridSpec grid;
    auto add_grid = [&](CLI::App* s) {
        s->add_option("--r-min", grid.r_min, "Smallest radius")->check(CLI::PositiveNumber);
        s->add_option("--r-max", grid.r_max, "Largest radius")->check(CLI::PositiveNumber);
        s->add_option("--n-r", grid.n_r, "Radii")->check(CLI::Range(2, 1 << 16));
        s->add_option("--n-theta", grid.n_theta, "Angles")->check(CLI::Range(2, 1 << 20));
    };
    auto* construct = app.add_subcommand("construct", "Build a global solution and write it as JSON");
    add_build_flags(construct, bc);
    construct->add_option("--grid", grid_path, "Also write the field grid as CSV to this path");
    add_grid(construct);

    auto* flux = app.add_subcommand("flux", "Energy flux of a solution");
    add_build_flags(flux, bf);

    double pp_B = 1.0;
    std::vector<double> levels;
    auto* phase = app.add_subcommand("phase-portrait", "Level curves of the pressure Hamiltonian in the (psi, psi') plane");
    phase->add_option("--lambda", lam, "Homogeneity degree")->required();
    phase->add_option("-B,--bernoulli", pp_B, "Bernoulli constant");
    phase->add_option("--levels", levels, "Pressure levels P")->delimiter(',');

    auto* field = app.add_subcommand("export-field", "Velocity, stream function, vorticity and pressure on a polar grid");
    add_build_flags(field, be);
    add_grid(field);

    auto* selfcheck = app.add_subcommand("selfcheck", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path, cfg);
    if (app.count("--format")) cfg.format = (format == "csv" || format == "CSV") ? OutputFormat::CSV : OutputFormat::JSON;
    if (app.count("--output")) cfg.output = output;
    if (app.count("--points-per-arc")) cfg.points_per_arc = points;
    if (app.count("--quadrature-tol")) cfg.quadrature_tol = qtol;
    if (app.count("--root-tol")) cfg.root_tol = rtol;
    if (app.count("--ode-tol")) cfg.ode_tol = otol;
    if (app.count("--seed")) cfg.seed = seed;

    if (*classify) return cmd_classify(lam, cfg);
    if (*scan) return cmd_period_scan(lam, region, bsign, p_lo, p_hi, n_points, cfg);
    if (*phase) return cmd_phase_portrait(lam, pp_B, levels, cfg);
    if (*construct) {
        const GlobalSolution g = build_solution(bc, cfg);
        const Diagnostics d = diagnose(g);
        if (!grid_path.empty()) {
            if (!(grid.r_min < grid.r_max)) throw UsageError("--r-min must be below --r-max");
            std::ofstream out(grid_path);
            if (!out) throw UsageError("cannot write " + grid_path);
            write_grid_csv(out, export_grid(g, grid));
        }
        emit(cfg, to_json({g, d}));
        std::cerr << report_json(g, d).dump() << "\n";
        return kExitOk;
    }
    if (*flux) {
        const GlobalSolution g = build_solution(bf, cfg);
        const Flux f = energy_flux(g);
        if (cfg.format == OutputFormat::JSON) {
            emit(cfg, json{{"flux", num(f.flux)}, {"scale", num(f.scale)}, {"scaled", num(f.scaled)}}.dump(2));
        } else {
            emit(cfg, "flux,scale,scaled\n" + fmt17(f.flux) + "," + fmt17(f.scale) + "," + fmt17(f.scaled) + "\n");
        }
        return kExitOk;
    }
    if (*field) {
        const GlobalSolution g = build_solution(be, cfg);
        if (!(grid.r_min < grid.r_max)) throw UsageError("--r-min must be below --r-max");
        const std::vector<GridCell> cells = export_grid(g, grid);
        if (cfg.format == OutputFormat::CSV || !app.count("--format")) {
            std::ostringstream os;
            write_grid_csv(os, cells);
            emit(cfg, os.str());
        } else {
            json rows = json::array();
            for (const GridCell& c : cells) {
                if (!c.valid) {
                    rows.push_back({{"r", num(c.r)}, {"theta", num(c.theta)}, {"valid", false}});
                    continue;
                }
                const FieldSample& s = c.s;
                rows.push_back({{"r", num(s.r)}, {"theta", num(s.theta)}, {"x", num(s.x)}, {"y", num(s.y)}, {"u_x", num(s.u_x)},
                                {"u_y", num(s.u_y)}, {"psi_value", num(s.psi)}, {"stream", num(s.stream)},
                                {"vorticity", num(s.vorticity)}, {"pressure", num(s.pressure)}, {"valid", true}});
            }
            emit(cfg, rows.dump(2));
        }
        return kExitOk;
    }
    if (*selfcheck) {
        const auto results = run_acceptance(cfg.seed, [](const CriterionResult& r) {
            std::cout << format_result(r) << "\n" << std::flush;
        });
        return acceptance_status(results) == 0 ? kExitOk : kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const SpanMismatchError& e) {
        std::cerr << "error: " << e.what() << " (span gap " << e.gap() << ")\n";
        return kExitDomain;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.category() == ErrorCategory::Domain ? kExitDomain : kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
