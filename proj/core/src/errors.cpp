#include "devratio/errors.hpp"

namespace devratio {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::PathExplosion: return "PathExplosion";
    case ErrorCode::InfeasibleFlow: return "InfeasibleFlow";
    case ErrorCode::NonMonotonePerceived: return "NonMonotonePerceived";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NotCommonSource: return "NotCommonSource";
    case ErrorCode::NotInducible: return "NotInducible";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::MuTooLarge: return "MuTooLarge";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::DemandNotNormalized: return "DemandNotNormalized";
    case ErrorCode::NoValidSplit: return "NoValidSplit";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
  }
  return "Unknown";
}

}  // namespace devratio
