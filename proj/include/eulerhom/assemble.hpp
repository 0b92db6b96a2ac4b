#pragma once

#include <iosfwd>
#include <vector>

#include "eulerhom/arcs.hpp"
#include "eulerhom/classify.hpp"
#include "eulerhom/families.hpp"

namespace eulerhom {

enum class Smoothness { C1, VortexSheet, CuspEndpoints };
const char* smoothness_name(Smoothness s);

struct Piece {
    LocalArc arc;
    int sign = 1;
    double offset = 0.0;  // in [0, 2 pi)
};

struct GlobalSolution {
    double lambda = 0.0;
    double P = 0.0;
    std::vector<Piece> pieces;
    Smoothness smoothness = Smoothness::C1;

    // signed profiles in global theta, one per piece
    std::vector<std::vector<ProfilePoint>> segments() const;
    // signed profiles in arc-local theta with their offsets
    std::vector<Segment> local_segments() const;
    double total_span() const;
};

struct ArcSpec {
    double B;
    int sign;
};

struct StitchOptions {
    double tol = 1e-9;
    bool auto_repair = false;  // re-solve the last B to absorb a span gap
    int points_per_arc = 512;
    double offset = 0.0;
    std::size_t max_pieces = 64;
    SolveOptions solve;
};

GlobalSolution stitch(double lambda, double P, const std::vector<ArcSpec>& specs, const StitchOptions& opt = {});

// m arcs of span 2 pi / m with alternating signs (the same sign when m is odd
// would be just as valid; alternating keeps lambda > 1 junctions C1 when m is even).
GlobalSolution equal_arcs(double lambda, double P, int m, const StitchOptions& opt = {});

// n copies of one elliptic period.
GlobalSolution elliptic_global(const LocalArc& period, int n, double offset = 0.0);

// Rotational, Lambda2 or LambdaHalf family as a single 2 pi piece.
GlobalSolution family_global(const ExplicitFamily& f, int n_intervals = 512);

// Weak residuals of the arc shapes, integrated by tanh-sinh on each half arc.
std::vector<double> weak_residual(const GlobalSolution& g);
// Classical residual from the samples, weak residuals from weak_residual.
Residual solution_residual(const GlobalSolution& g);
// Both residuals from the samples alone (families::ode_residual).
Residual sampled_residual(const GlobalSolution& g);

struct Flux {
    double flux = 0.0;
    double scale = 0.0;   // (int psi'^2)^(3/2) over the arc shapes
    double scaled = 0.0;  // |flux| / scale
};

Flux energy_flux(const GlobalSolution& g);

// Negative control: piece i resampled as psi(T (theta/T)^power).
GlobalSolution corrupt_piece(const GlobalSolution& g, std::size_t i, double power = 1.1);

// H1 norm of the arc shapes, and the same from the samples.
double h1_norm(const GlobalSolution& g);
double profile_h1_norm(const GlobalSolution& g);

struct FieldSample {
    double r = 0.0, theta = 0.0, x = 0.0, y = 0.0;
    double u_tau = 0.0, u_nu = 0.0, u_x = 0.0, u_y = 0.0;
    double psi = 0.0;        // angular profile value
    double stream = 0.0;     // r^lambda psi
    double vorticity = 0.0;  // r^(lambda-2)(lambda^2 psi + psi'')
    double pressure = 0.0;   // r^(2 lambda - 2) P
};

FieldSample field_at(const GlobalSolution& g, double r, double theta);
// q = -1: irrotational, pressure -|u|^2/2, no stream function (NaN)
FieldSample field_at(const PointVortexField& v, double r, double theta);

struct GridSpec {
    double r_min = 0.1;
    double r_max = 1.0;
    int n_r = 16;
    int n_theta = 64;
};

struct GridCell {
    double r = 0.0, theta = 0.0;
    bool valid = false;
    FieldSample s;
};

// Row-major over r, then theta in [0, 2 pi).
std::vector<GridCell> export_grid(const GlobalSolution& g, const GridSpec& grid);
void write_grid_csv(std::ostream& os, const std::vector<GridCell>& cells);

}  // namespace eulerhom
