#include "eulerhom/core.hpp"

#include <cmath>
#include <sstream>

#include "eulerhom/errors.hpp"

namespace eulerhom {

FlowParams::FlowParams(double lambda_, double P_, double B_) : lambda(lambda_), P(P_), B(B_) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        fail(ErrorKind::DomainError, "lambda must be positive");
    if (!std::isfinite(P) || !std::isfinite(B))
        fail(ErrorKind::DomainError, "P and B must be finite");
}

bool operator==(const FlowParams& l, const FlowParams& r) {
    return l.lambda == r.lambda && l.P == r.P && l.B == r.B;
}

PhaseState::PhaseState(double x_, double y_) : x(x_), y(y_) {
    if (!(x >= 0.0)) fail(ErrorKind::DomainError, "phase state needs x >= 0");
}

double real_pow(double x, double alpha) {
    if (x > 0.0) return std::exp(alpha * std::log(x));
    if (x == 0.0) {
        if (alpha > 0.0) return 0.0;
        if (alpha == 0.0) return 1.0;
        fail(ErrorKind::DomainError, "0 raised to a negative power");
    }
    fail(ErrorKind::DomainError, "negative base in real_pow");
}

double pressure_hamiltonian(const PhaseState& s, double lambda, double B) {
    if (!(lambda > 0.0)) fail(ErrorKind::DomainError, "lambda must be positive");
    const double a = (2.0 * lambda - 2.0) / lambda;
    double h = -0.5 * s.y * s.y - 0.5 * lambda * lambda * s.x * s.x;
    if (B != 0.0) {
        if (s.x == 0.0 && a < 0.0)
            fail(ErrorKind::DomainError, "Bernoulli term diverges at x = 0 for lambda < 1");
        h += 0.5 * B * real_pow(s.x, a);
    }
    return h;
}

SteadyStateInfo center(double lambda, double B) {
    if (lambda == 1.0 || !((lambda - 1.0) * B > 0.0))
        fail(ErrorKind::DomainError, "no center on the axis for these (lambda, B)");
    const double l3 = lambda * lambda * lambda;
    const double u = B * (lambda - 1.0) / l3;  // x_c^(2/lambda)
    const double xc = real_pow(u, 0.5 * lambda);
    return {xc, pressure_hamiltonian(PhaseState(xc, 0.0), lambda, B)};
}

SteadyStateInfo steady_state(double lambda, double B) {
    if (!(lambda > 1.0)) fail(ErrorKind::DomainError, "steady state needs lambda > 1");
    if (!(B > 0.0)) fail(ErrorKind::DomainError, "steady state needs B > 0");
    return center(lambda, B);
}

Rescaled rescale_to_unit_P(const FlowParams& p) {
    if (p.P == 0.0) fail(ErrorKind::DomainError, "cannot rescale P = 0 to unit pressure");
    const double ap = std::fabs(p.P);
    const double s = std::sqrt(ap);
    return {FlowParams(p.lambda, p.P > 0 ? 1.0 : -1.0, p.B / real_pow(ap, 1.0 / p.lambda)), s};
}

Rescaled rescale_to_unit_B(const FlowParams& p) {
    if (p.B == 0.0) fail(ErrorKind::DomainError, "cannot rescale B = 0 to unit Bernoulli constant");
    const double ab = std::fabs(p.B);
    const double s = real_pow(ab, 0.5 * p.lambda);
    return {FlowParams(p.lambda, p.P / real_pow(ab, p.lambda), p.B > 0 ? 1.0 : -1.0), s};
}

FlowParams unscale(const FlowParams& scaled, double scale) {
    if (!(scale > 0.0)) fail(ErrorKind::DomainError, "scale must be positive");
    return FlowParams(scaled.lambda, scaled.P * scale * scale,
                      scaled.B * real_pow(scale, 2.0 / scaled.lambda));
}

FlowParams conjugate(const FlowParams& p) {
    const double l4 = p.lambda * p.lambda * p.lambda * p.lambda;
    return FlowParams(1.0 / p.lambda, -p.B / (2.0 * l4), -2.0 * p.P / l4);
}

std::pair<double, double> phase_vector_field(const PhaseState& s, double lambda, double B) {
    const double c = (lambda - 1.0) / lambda * B;
    double dy = -lambda * lambda * s.x;
    if (c != 0.0) {
        const double e = (lambda - 2.0) / lambda;
        if (s.x == 0.0 && e < 0.0)
            fail(ErrorKind::DomainError, "vector field singular at x = 0 for lambda < 2");
        dy += c * real_pow(s.x, e);
    }
    return {s.y, dy};
}

}  // namespace eulerhom
