#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scalebench {

enum class ErrorKind {
  MalformedGenerator,
  InvalidArgument,
  InvalidStride,
  DimensionMismatch,
  NotPositiveDefinite,
  ZeroEigenvalue,
  NotInvertible,
  ResolventPole,
  ResolventSetViolation,
  QuadratureNonConvergence,
  PreconditionViolation,
  GapViolation,
  CertificateMismatch,
  NormConditionViolated,
  OutOfRange,
  Parse,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the growth-spec parser; carries the offending position.
class ParseError : public Error {
 public:
  ParseError(std::string input, std::size_t position, std::string expected);
  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& input() const noexcept { return input_; }
  // Two-line diagnostic: the input followed by a caret under the position.
  std::string caret() const;

 private:
  std::string input_;
  std::size_t position_;
  std::string expected_;
};

}  // namespace scalebench
