#pragma once

#include <string>
#include <vector>

#include "eulerhom/core.hpp"

namespace eulerhom {

enum class SpanMethod { QuadratureHyperbolic, QuadratureElliptic, Conjugacy, ClosedForm, TanhSinhDirect };

const char* method_name(SpanMethod m);

struct SpanResult {
    double T = 0.0;
    SpanMethod method = SpanMethod::ClosedForm;
    double est_error = 0.0;
};

enum class BSign { Plus, Minus, Zero };

struct SpanOptions {
    double tol = 1e-12;          // relative quadrature target
    double accept_error = 1e-10;  // larger estimates raise QuadratureFailure
};

// d theta / d phi along the arch x = x0 sin(phi), for lambda > 1, P < 0 and
// B = +-1. Half the life-span is its integral over [0, pi/2].
struct ArchIntegrand {
    double lambda = 0.0, sigma = 0.0, x0 = 0.0, a = 0.0, K = 0.0, E = 0.0;
    double one_minus_q(double phi) const;
    double operator()(double phi) const;
    // width of the near-separatrix peak at phi = 0 (0 when there is none)
    double width() const;
};

ArchIntegrand arch_integrand(double lambda, double P, BSign b);

// Life-span of the hyperbolic arch for lambda > 1, P < 0 after rescaling to
// B in {+1, -1, 0}.
SpanResult span_hyperbolic(double lambda, double P, BSign b, const SpanOptions& opt = {});

// Full period of the closed orbit for lambda > 1, B = 1, 0 < P < P_max.
SpanResult period_elliptic(double lambda, double P, const SpanOptions& opt = {});

// Dispatch on (lambda, P, B); lambda < 1 goes through the conjugate problem.
SpanResult span_any(const FlowParams& p, const SpanOptions& opt = {});

// Tanh-sinh on the plain x-integral between turning points, any lambda != 1.
// Shares no code path with the substituted quadratures above.
SpanResult span_direct(const FlowParams& p, double tol = 1e-12);

struct LimitValues {
    double T_center;
    double T_separatrix;
    double T_infinity;
};

LimitValues limit_values(double lambda);

double chicone_W_upper(double lambda);
double chicone_W(double x, double lambda);

// True where the period monotonicity is proved (lambda >= 4/3, lambda != 2);
// (1, 4/3) is only checked numerically.
bool monotonicity_proved(double lambda);

enum class Trend { StrictlyIncreasing, StrictlyDecreasing, Constant, NotMonotone };
const char* trend_name(Trend t);
// Constant when every value is within flat_tol of the first one.
Trend trend_of(const std::vector<double>& v, double flat_tol);

}  // namespace eulerhom
