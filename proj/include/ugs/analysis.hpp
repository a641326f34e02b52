#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugs/network.hpp"
#include "ugs/solver.hpp"

namespace ugs {

struct SweepRow {
  double speed = 0.0;
  bool valid = false;  // false when the speed breaks the speed advantage
  Time D = kNoGuarantee;
  Time delay = 0.0;
  std::optional<NodeIndex> mu;
};

using SpeedSweep = std::vector<SweepRow>;

/// One solve per speed, Euclidean metric, rows in grid order.
SpeedSweep sweep(const RoadNetwork& network, std::span<const double> speeds,
                 const SolveOptions& options = {}, const PathOptions& paths = {});

/// CSV with header V,D,delay,mu. Invalid rows leave D, delay and mu empty.
std::string sweep_csv(const SpeedSweep& rows);

struct CriticalSpeed {
  double speed = 0.0;  // upper end of the final bracket
  double lo = 0.0;
  double hi = 0.0;
  int solves = 0;
};

/// Bisection on "speed advantage holds and D(entry|I0) > 0". Throws
/// BracketInvalid unless the predicate is false at lo and true at hi.
CriticalSpeed critical_speed(const RoadNetwork& network, double lo, double hi,
                             double tol = 1e-4, const SolveOptions& options = {},
                             const PathOptions& paths = {});

}  // namespace ugs
