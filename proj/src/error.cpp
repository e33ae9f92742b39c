#include "ellbun/error.hpp"

namespace ellbun {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::OffCurve: return "OffCurve";
    case ErrorCode::CurveTooLarge: return "CurveTooLarge";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::ZeroRankSlope: return "ZeroRankSlope";
    case ErrorCode::NotSemistable: return "NotSemistable";
    case ErrorCode::InconsistentProfile: return "InconsistentProfile";
    case ErrorCode::OrientationError: return "OrientationError";
    case ErrorCode::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorCode::NotCharge31Stable: return "NotCharge31Stable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ModelInconsistency: return "ModelInconsistency";
    case ErrorCode::BadScenarioFile: return "BadScenarioFile";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
  }
  return "Unknown";
}

}  // namespace ellbun
