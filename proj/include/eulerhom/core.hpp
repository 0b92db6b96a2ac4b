#pragma once

#include <utility>

namespace eulerhom {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// (lambda, P, B) of a homogeneous solution u = grad^perp(r^lambda psi(theta)).
struct FlowParams {
    double lambda;
    double P;
    double B;

    FlowParams(double lambda, double P, double B);

    double q() const { return lambda - 1.0; }
    // lambda == 1: every solution is a parallel shear flow
    bool is_degenerate() const { return lambda == 1.0; }
    // exponent (2 lambda - 2)/lambda of the Bernoulli term
    double a() const { return (2.0 * lambda - 2.0) / lambda; }
};

bool operator==(const FlowParams& l, const FlowParams& r);

struct PhaseState {
    double x;
    double y;
    PhaseState(double x, double y);
};

// One sample of an angular profile: (theta, psi, psi').
struct ProfilePoint {
    double theta;
    double psi;
    double dpsi;
};

struct SteadyStateInfo {
    double x_s;
    double P_max;
};

struct Rescaled {
    FlowParams params;
    double scale;
};

// x^alpha with explicit handling of x == 0.
double real_pow(double x, double alpha);

double pressure_hamiltonian(const PhaseState& s, double lambda, double B);

// Center of the phase plane for lambda > 1, B > 0.
SteadyStateInfo steady_state(double lambda, double B);

// Generic critical point on the x-axis, any lambda != 1 with (lambda-1)B > 0.
// For lambda > 1 it is the maximum of P over the axis (P_max); for lambda < 1
// orbits exist below it.
SteadyStateInfo center(double lambda, double B);

Rescaled rescale_to_unit_P(const FlowParams& p);
Rescaled rescale_to_unit_B(const FlowParams& p);
// Undo either rescaling: P = P~ s^2, B = B~ s^(2/lambda).
FlowParams unscale(const FlowParams& scaled, double scale);

FlowParams conjugate(const FlowParams& p);

std::pair<double, double> phase_vector_field(const PhaseState& s, double lambda, double B);

}  // namespace eulerhom
