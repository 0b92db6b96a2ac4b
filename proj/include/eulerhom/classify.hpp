#pragma once

#include <string>
#include <vector>

#include "eulerhom/arcs.hpp"
#include "eulerhom/core.hpp"
#include "eulerhom/orbits.hpp"
#include "eulerhom/periods.hpp"

namespace eulerhom {

double bernoulli(double psi, double dpsi, double lambda, double P);

SolutionType solution_type(const FlowParams& p);

// (max B - min B) / max(|B|, |P|^(1/lambda)) over the profile nodes where the
// evaluation is well conditioned: relative perturbations of psi, psi' change
// B by at most kappa_max times as much relative to that scale.
double bernoulli_variation(const LocalArc& arc, double kappa_max = 1e3);

enum class CountKind { Zero, Finite, Continuum, Unknown };
const char* count_name(CountKind c);

struct EllipticEntry {
    int n;
    double P_star;
    double period;
};

struct EllipticCatalog {
    double lambda = 0.0;
    CountKind count = CountKind::Zero;
    int n_solutions = 0;  // meaningful for Finite
    std::vector<EllipticEntry> entries;
};

// Count only; entries stay empty.
EllipticCatalog count_elliptic(double lambda);
// Count plus the solved (n, P*, T) entries when Finite.
EllipticCatalog elliptic_catalog(double lambda);

// Tolerances shared by the root finders below.
struct SolveOptions {
    double root_tol = 1e-10;  // accepted |T - target|
    SpanOptions span;
    OdeOptions ode;
};

struct EllipticSolution {
    bool continuum = false;  // lambda = 2, n = 2: every P works
    double P_star = 0.0;
    double period = 0.0;
    Orbit orbit;
};

// P in (0, P_max) with period 2 pi / n, B = 1.
EllipticSolution solve_elliptic(double lambda, int n, const SolveOptions& opt = {});

enum class PSign { Plus, Minus };

struct HyperbolicSolve {
    double B_star;
    LocalArc arc;
};

// Fix |P| = 1 and find B with life-span target_T.
HyperbolicSolve solve_hyperbolic_span(double lambda, PSign s, double target_T, int n_intervals = 512,
                                      const SolveOptions& opt = {});

// Same with an arbitrary P != 0, through the unit-P rescaling.
HyperbolicSolve solve_hyperbolic_span_at(double lambda, double P, double target_T, int n_intervals = 512,
                                         const SolveOptions& opt = {});

struct SpanRange {
    std::string bsign;  // "B>0", "B=0", "B<0"
    double lo;
    double hi;
    bool closed_point;   // a single value (B = 0)
    bool exists;
};

struct HyperbolicRanges {
    double P;  // representative pressure, +1 or -1
    std::vector<SpanRange> ranges;
    bool can_tile;  // some equal-span tiling of the circle is possible
};

std::vector<HyperbolicRanges> hyperbolic_ranges(double lambda);

}  // namespace eulerhom
