#pragma once

#include <optional>
#include <vector>

#include "eulerhom/core.hpp"

namespace eulerhom {

enum class InterceptKind { EllipticPair, HyperbolicSingle, Center, Empty };

struct Intercepts {
    InterceptKind kind = InterceptKind::Empty;
    double x0 = 0.0;
    std::optional<double> x1;
};

// g(x) = lambda^2 x^2 - B x^a + 2P; the level set P meets the axis where g = 0
// and y^2 = -g along it.
double level_function(const FlowParams& p, double x);
double level_function_derivative(const FlowParams& p, double x);

Intercepts find_intercepts(const FlowParams& p);

enum class StopKind { ReturnToAxis, ReturnToStart, FixedTime };

struct StopCondition {
    StopKind kind;
    double t = 0.0;
    static StopCondition return_to_axis() { return {StopKind::ReturnToAxis, 0.0}; }
    static StopCondition return_to_start() { return {StopKind::ReturnToStart, 0.0}; }
    static StopCondition fixed_time(double t) { return {StopKind::FixedTime, t}; }
};

struct OdeOptions {
    double rtol = 1e-10;
    double x_min = 1e-12;
    double dt_floor = 1e-14;
    double event_tol = 1e-12;
    double max_spacing = kTwoPi / 1024.0;
    int min_intervals = 64;
    double t_max = 1e3;
};

struct OrbitSample {
    double t;
    PhaseState s;
};

struct Orbit {
    FlowParams params;
    std::vector<OrbitSample> samples;
    bool closed = false;
    double measured_span = 0.0;
    StopKind stop = StopKind::FixedTime;
};

// ReturnToAxis accepts a start at the apex (y = 0) or on the axis (x = 0,
// y > 0). In both cases measured_span is the full life-span and the samples
// cover the whole arch starting from the axis.
Orbit integrate_orbit(const FlowParams& p, const PhaseState& start, const StopCondition& stop,
                      const OdeOptions& opt = {});

std::vector<ProfilePoint> reconstruct_profile(const Orbit& o);

}  // namespace eulerhom
