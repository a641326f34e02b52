#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ugs {

enum class ErrorCode {
  InvalidInput,
  CycleDetected,
  EntryIsGoal,
  UnreachableNode,
  NonPositiveEdgeTime,
  GoalMismatch,
  PathExplosion,
  OrphanUgs,
  SpeedAdvantageViolated,
  TriangleViolation,
  NonZeroDiagonal,
  InconsistentObservation,
  PolicyHole,
  NonTermination,
  CapExceeded,
  BracketInvalid,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported as ugs::Error carrying a code that the
/// CLI maps onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for errors caused by a malformed or inadmissible input.
  bool is_validation() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace ugs
