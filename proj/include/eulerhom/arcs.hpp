#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "eulerhom/core.hpp"
#include "eulerhom/families.hpp"
#include "eulerhom/orbits.hpp"

namespace eulerhom {

enum class SolutionTag { Elliptic, Hyperbolic, Parabolic, Rotational, ParallelShear, Unknown };
enum class TypeBasis { SignRule, Table, Explicit };

const char* tag_name(SolutionTag t);
const char* basis_name(TypeBasis b);

struct SolutionType {
    SolutionTag tag = SolutionTag::Unknown;
    TypeBasis basis = TypeBasis::SignRule;
};

// Continuous description of one local solution on [0, span]. Hyperbolic
// shapes vanish at both ends; periodic shapes wrap theta modulo span.
class ArcShape {
public:
    virtual ~ArcShape() = default;
    virtual double span() const = 0;
    virtual ProfilePoint at(double theta) const = 0;
    // psi(span - t) = psi(t) for the whole arc
    virtual bool mirror_symmetric() const { return false; }
    // Point at distance d before the right end. Mirror-symmetric shapes
    // evaluate it at d itself, which keeps full precision for tiny d.
    ProfilePoint at_from_end(double d) const;
};

struct LocalArc {
    FlowParams params;
    double span = 0.0;
    std::vector<ProfilePoint> profile;
    double endpoint_slope = 0.0;  // |psi'| at the ends; +inf for cusps
    SolutionType type;
    std::shared_ptr<const ArcShape> shape;
};

// Node-clustering exponent for arc profiles: 1 where the arch is smooth,
// larger where psi has fractional powers at the ends.
int grading_exponent(double lambda);

// theta_j = T s^k / (s^k + (1-s)^k), s = j/N, mirrored exactly about T/2.
std::vector<double> graded_nodes(double T, int n_intervals, int k);

// Shape of the sign-definite arch for (lambda, P, B). Covers lambda > 1 with
// P <= 0, lambda = 1, and 1/2 < lambda < 1 with B >= 0.
std::shared_ptr<const ArcShape> hyperbolic_shape(const FlowParams& p);

// Hyperbolic arc sampled on graded nodes; n_intervals is rounded up to a
// multiple of 4.
LocalArc make_hyperbolic_arc(const FlowParams& p, int n_intervals = 512);

// One period of the closed orbit (lambda > 1, B > 0, 0 < P < P_max), started
// at the outer turning point and sampled uniformly by the ODE integrator.
LocalArc make_elliptic_arc(const FlowParams& p, const OdeOptions& opt = {});

// Arc whose shape is an explicit family on its natural interval.
LocalArc make_family_arc(const ExplicitFamily& f, int n_intervals = 512);

// Shape recovered from samples by cubic Hermite interpolation. Given the
// ODE parameters it is quintic wherever psi'' follows from (psi, psi').
std::shared_ptr<const ArcShape> sampled_shape(const std::vector<ProfilePoint>& profile, bool periodic,
                                              const std::optional<FlowParams>& ode = std::nullopt);

}  // namespace eulerhom
