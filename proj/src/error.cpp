#include "scalebench/error.hpp"

namespace scalebench {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedGenerator: return "malformed-generator";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidStride: return "invalid-stride";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::NotPositiveDefinite: return "not-positive-definite";
    case ErrorKind::ZeroEigenvalue: return "zero-eigenvalue";
    case ErrorKind::NotInvertible: return "not-invertible";
    case ErrorKind::ResolventPole: return "resolvent-pole";
    case ErrorKind::ResolventSetViolation: return "resolvent-set-violation";
    case ErrorKind::QuadratureNonConvergence: return "quadrature-non-convergence";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::GapViolation: return "gap-violation";
    case ErrorKind::CertificateMismatch: return "certificate-mismatch";
    case ErrorKind::NormConditionViolated: return "norm-condition-violated";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::Parse: return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

ParseError::ParseError(std::string input, std::size_t position, std::string expected)
    : Error(ErrorKind::Parse,
            "at position " + std::to_string(position) + ": expected " + expected),
      input_(std::move(input)),
      position_(position),
      expected_(std::move(expected)) {}

std::string ParseError::caret() const {
  return input_ + "\n" + std::string(position_, ' ') + "^ expected " + expected_;
}

}  // namespace scalebench
