#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "eulerhom/core.hpp"

namespace eulerhom {

enum class FamilyKind { Rotational, ParallelShear, Lambda2, LambdaHalf, Harmonic, PointVortex };

const char* family_name(FamilyKind k);

struct FamilyCoeffs {
    double A = 0.0;       // amplitude (Rotational, ParallelShear, Harmonic) or tangential part (PointVortex)
    double B_coef = 0.0;  // radial part of the point vortex
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

struct ExplicitFamily {
    FamilyKind kind;
    FamilyCoeffs coeffs;
    FlowParams params;

    // psi = sqrt(2(lambda-1)P)/lambda, needs (lambda-1)P > 0
    static ExplicitFamily rotational(double lambda, double P);
    // psi = A |cos theta|^lambda, P = 0
    static ExplicitFamily parallel_shear(double lambda, double A);
    // psi = g1 + g2 cos 2theta, lambda = 2
    static ExplicitFamily lambda2(double gamma1, double gamma2);
    // psi = sqrt(g1 + g2 cos theta), lambda = 1/2, |g2| <= g1
    static ExplicitFamily lambda_half(double gamma1, double gamma2);
    // psi = (sqrt(-2P)/lambda) cos(lambda theta), B = 0
    static ExplicitFamily harmonic(double lambda, double P);

    // natural sampling interval: the full circle, or one arch for
    // ParallelShear and Harmonic
    std::pair<double, double> domain() const;
};

// (psi, psi'); psi' is NaN where it is infinite (shear zero rays for lambda < 1)
std::pair<double, double> evaluate_family(const ExplicitFamily& f, double theta);

std::vector<ProfilePoint> sample_family(const ExplicitFamily& f, int n_intervals);

// q = -1 field u = (A tau + B nu)/r; has no r^lambda stream function here.
struct PointVortexField {
    double A;
    double B;
    double u_tau(double r) const { return A / r; }
    double u_nu(double r) const { return B / r; }
    double speed(double r) const;
};

PointVortexField point_vortex(double A, double B);

struct Residual {
    double max_classical = 0.0;
    std::vector<double> weak;
};

// Number of Fourier test functions: 1, cos k (k <= 8), sin k (k <= 7).
inline constexpr int kWeakModes = 16;

double test_function(int m, double theta);
double test_function_derivative(int m, double theta);
// Exact integral of test function m over [a, b].
double test_function_integral(int m, double a, double b);

// One smooth piece sampled on a grid that is smooth in the sample index
// (uniform or graded). Theta is local to the piece so that nodes crowded at
// its ends keep their relative precision; the piece starts at offset.
struct Segment {
    double offset = 0.0;
    std::vector<ProfilePoint> local;
};

// Weak values are summed over segments.
Residual ode_residual(const std::vector<Segment>& segments, double lambda, double P);
// Segments in global theta; each is shifted to start at zero first.
Residual ode_residual(const std::vector<std::vector<ProfilePoint>>& segments, double lambda, double P);
// Flat profile; a new segment starts wherever theta fails to increase.
Residual ode_residual(const std::vector<ProfilePoint>& profile, double lambda, double P);

// Composite Newton-Cotes weights on N+1 equally spaced index points (h = 1).
std::vector<double> index_weights(std::size_t n_points);
// d theta / d index by eighth-order differences. On a grid mirrored about its
// midpoint the right half reuses the left-half values, which do not suffer
// the rounding of theta near the right end.
std::vector<double> index_jacobian(const std::vector<ProfilePoint>& seg);

// Integral of f(point) d theta over one segment. A non-finite end value is
// replaced by extrapolation from the five nodes next to it.
double segment_integral(const std::vector<ProfilePoint>& seg, const std::function<double(const ProfilePoint&)>& f);

}  // namespace eulerhom
