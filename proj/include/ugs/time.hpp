#pragma once

#include <cmath>
#include <limits>

namespace ugs {

/// Evader travel time units. The evader moves at unit speed, so road
/// distances and times coincide.
using Time = double;

/// Comparison tolerance for all time arithmetic.
inline constexpr Time kTimeEps = 1e-9;

/// Visit time of a node that does not lie on a path.
inline constexpr Time kNever = std::numeric_limits<Time>::infinity();

/// Latest-exit sentinel for (node, set) pairs with no admissible move.
inline constexpr Time kNoGuarantee = -std::numeric_limits<Time>::infinity();

inline bool time_eq(Time a, Time b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= kTimeEps;
}

inline bool time_le(Time a, Time b) { return a <= b + kTimeEps; }

inline bool time_lt(Time a, Time b) { return a < b - kTimeEps; }

}  // namespace ugs
