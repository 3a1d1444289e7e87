#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spdid {

enum class ErrorCode {
  NonFiniteEntry,
  NotSymmetric,
  NotPositiveDefinite,
  NotSquare,
  ConvergenceFailure,
  DomainError,
  DimensionMismatch,
  DegenerateVariance,
  InvalidParameter,
  NumericalError,
  UnknownMetric,
  LabelMismatch,
  BaseNotFound,
  NoSubjectsFound,
  ParseError,
  ShapeMismatch,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can branch on the kind without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace spdid
