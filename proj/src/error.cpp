#include "ugs/error.hpp"

namespace ugs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::EntryIsGoal: return "EntryIsGoal";
    case ErrorCode::UnreachableNode: return "UnreachableNode";
    case ErrorCode::NonPositiveEdgeTime: return "NonPositiveEdgeTime";
    case ErrorCode::GoalMismatch: return "GoalMismatch";
    case ErrorCode::PathExplosion: return "PathExplosion";
    case ErrorCode::OrphanUgs: return "OrphanUgs";
    case ErrorCode::SpeedAdvantageViolated: return "SpeedAdvantageViolated";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::NonZeroDiagonal: return "NonZeroDiagonal";
    case ErrorCode::InconsistentObservation: return "InconsistentObservation";
    case ErrorCode::PolicyHole: return "PolicyHole";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
  }
  return "Unknown";
}

bool Error::is_validation() const noexcept {
  switch (code_) {
    case ErrorCode::PolicyHole:
    case ErrorCode::NonTermination:
    case ErrorCode::InconsistentObservation:
      return false;
    default:
      return true;
  }
}

}  // namespace ugs
