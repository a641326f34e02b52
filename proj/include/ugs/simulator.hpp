#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ugs/information.hpp"
#include "ugs/network.hpp"
#include "ugs/solver.hpp"

namespace ugs {

/// How the paths of I fare when the pursuer reaches u at time `arrival`.
struct MoveOutcome {
  PathSet captured;               // visit u exactly at arrival
  std::vector<VisitGroup> red;    // visited u earlier, one group per delay
  PathSet green;                  // not yet at u (including paths avoiding u)
};

MoveOutcome resolve_move(const PathSet& I, NodeIndex u, Time arrival,
                         const VisitSchedule& schedule);

struct TranscriptRow {
  Time t = 0.0;
  NodeIndex node = 0;
  Observation obs;
  PathSet set;
};

struct SimOutcome {
  enum class Kind { Captured, Escaped };
  Kind kind = Kind::Escaped;
  Time time = 0.0;
  NodeIndex node = 0;
  PathIndex path = 0;
  std::vector<TranscriptRow> transcript;

  bool captured() const noexcept { return kind == Kind::Captured; }
};

/// Plays `policy` against an evader on path k, the pursuer starting at the
/// entry at time t0.
SimOutcome simulate(const Scenario& scenario, const SolveResult& policy, PathIndex k,
                    Time t0);

struct VerifyReport {
  Time t0 = 0.0;
  std::vector<SimOutcome> outcomes;
  bool all_captured = false;
};

VerifyReport verify_guarantee(const Scenario& scenario, const SolveResult& policy, Time t0);

struct OracleOptions {
  Resolution resolution = Resolution::Strict;
  /// Bisection stops once the bracket is narrower than this.
  Time tolerance = 1e-8;
  std::size_t max_paths = 6;
  std::size_t max_nodes = 10;
};

/// Exhaustive search: can some pursuer strategy starting at the entry at t0
/// capture the evader on every path? Strict plays the UGS readings as the
/// simulator does; Paper plays the membership split used by the paper
/// recursion.
bool oracle_guarantees(const Scenario& scenario, Time t0, const OracleOptions& options = {});

/// Largest t0 in [0, max_k |P_k|] for which oracle_guarantees holds.
Time oracle_max_delay(const Scenario& scenario, const OracleOptions& options = {});

}  // namespace ugs
