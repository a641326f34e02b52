#pragma once

#include <span>
#include <vector>

#include "ugs/network.hpp"
#include "ugs/path_set.hpp"
#include "ugs/time.hpp"

namespace ugs {

/// What a UGS reports when the pursuer arrives: Green (evader not yet seen)
/// or Red with the delay since the evader passed.
struct Observation {
  bool red = false;
  Time delay = 0.0;

  static Observation green() { return {false, 0.0}; }
  static Observation red_after(Time d) { return {true, d}; }

  bool operator==(const Observation&) const = default;
};

/// Paths in I whose visit time at u equals t_plus - d.
PathSet update_red(const PathSet& I, NodeIndex u, Time t_plus, Time d,
                   const VisitSchedule& schedule);

/// Paths in I that have not yet visited u at time t_plus.
PathSet update_green(const PathSet& I, NodeIndex u, Time t_plus,
                     const VisitSchedule& schedule);

/// Applies `obs` received at node u at time t_plus.
PathSet apply_observation(const PathSet& I, NodeIndex u, Time t_plus,
                          const Observation& obs, const VisitSchedule& schedule);

struct Partition {
  PathSet red;    // I ∩ P_u
  PathSet green;  // I \ P_u
};

Partition partition(const PathSet& I, NodeIndex u, const VisitSchedule& schedule);

/// Paths of I through u grouped by equal visit time, in increasing time.
struct VisitGroup {
  Time time = 0.0;
  PathSet members;
};

std::vector<VisitGroup> visit_groups(const PathSet& I, NodeIndex u,
                                     const VisitSchedule& schedule);

enum class TieOrder {
  NodeAscending,
  NodeDescending,
};

struct EventRow {
  NodeIndex node = 0;
  Time time = 0.0;
  std::vector<PathSet> sets;
};

struct RealizableFamily {
  /// Sorted by cardinality_less.
  std::vector<PathSet> sets;
  std::vector<EventRow> log;

  bool contains(const PathSet& s) const;
};

/// Event sweep over (node, visit time) pairs in time order. Every set alive
/// at an event is split by the paths seen there; sets that include a path
/// which has reached its exit are retired.
RealizableFamily realizable_sets(const VisitSchedule& schedule,
                                 std::span<const EvaderPath> paths,
                                 TieOrder ties = TieOrder::NodeAscending);

}  // namespace ugs
