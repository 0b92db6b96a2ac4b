#pragma once

#include <stdexcept>
#include <string>

namespace eulerhom {

enum class ErrorKind {
    DomainError,
    SteadyStateError,
    InconsistentParams,
    NoSolution,
    OutOfRange,
    SpanMismatch,
    InadmissibleArc,
    OnSingularRay,
    InsufficientSamples,
    SingularEndpoint,
    NoBracket,
    StepFailure,
    QuadratureFailure,
    NonMonotoneDetected,
};

// Domain errors mean "no such solution / bad input"; numerical errors mean
// the machinery failed on an input that should have worked.
enum class ErrorCategory { Domain, Numerical };

const char* kind_name(ErrorKind k);
ErrorCategory category_of(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_of(kind_); }

private:
    ErrorKind kind_;
};

class SpanMismatchError : public Error {
public:
    SpanMismatchError(double gap, const std::string& what);
    // sum of spans minus 2*pi
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace eulerhom
