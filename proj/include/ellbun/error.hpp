#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellbun {

enum class ErrorCode {
  NotPrime,
  SingularCurve,
  OffCurve,
  CurveTooLarge,
  NotCoprime,
  DegreeMismatch,
  InvalidLength,
  ZeroRankSlope,
  NotSemistable,
  InconsistentProfile,
  OrientationError,
  HypothesesNotMet,
  NotCharge31Stable,
  ParseError,
  ModelInconsistency,
  BadScenarioFile,
  EnumerationTooLarge,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps codes onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ellbun
