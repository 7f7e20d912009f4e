#pragma once

#include <stdexcept>
#include <string>

namespace weingarten {

enum class ErrorCode {
  DegenerateRelation,
  TrivialSpec,
  UnsupportedSpec,
  InvalidArgument,
  SingularVerticalTangent,
  NonpositiveHeight,
  NotAnExtremum,
  OutOfDomain,
  Undefined,
  OutOfRange,
  NoBoundaryContact,
  NotPeriodic,
  EmptyCurve,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the Python bindings) can branch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace weingarten
