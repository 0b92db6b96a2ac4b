#include "eulerhom/errors.hpp"

namespace eulerhom {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SteadyStateError: return "SteadyStateError";
    case ErrorKind::InconsistentParams: return "InconsistentParams";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SpanMismatch: return "SpanMismatch";
    case ErrorKind::InadmissibleArc: return "InadmissibleArc";
    case ErrorKind::OnSingularRay: return "OnSingularRay";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::SingularEndpoint: return "SingularEndpoint";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NonMonotoneDetected: return "NonMonotoneDetected";
    }
    return "Unknown";
}

ErrorCategory category_of(ErrorKind k) {
    switch (k) {
    case ErrorKind::NoBracket:
    case ErrorKind::StepFailure:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::NonMonotoneDetected:
        return ErrorCategory::Numerical;
    default:
        return ErrorCategory::Domain;
    }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

SpanMismatchError::SpanMismatchError(double gap, const std::string& what)
    : Error(ErrorKind::SpanMismatch, what), gap_(gap) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace eulerhom
