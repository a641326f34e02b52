#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugs/path_set.hpp"
#include "ugs/time.hpp"

namespace ugs {

/// 0-based node index. Files and reports use 1-based ids (index + 1).
using NodeIndex = std::size_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

/// Network as read from a file, before any validation. Ids are 1-based.
struct NetworkDescription {
  struct Node {
    int id = 0;
    std::optional<double> x;
    std::optional<double> y;
  };
  struct Edge {
    int from = 0;
    int to = 0;
    double time = 0.0;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  int entry = 1;
  std::optional<std::vector<int>> goals;
};

struct Edge {
  NodeIndex from = 0;
  NodeIndex to = 0;
  Time time = 0.0;
};

/// Directed acyclic UGS graph. Immutable once built by validate_network().
class RoadNetwork {
 public:
  std::size_t node_count() const noexcept { return children_.size(); }
  NodeIndex entry() const noexcept { return entry_; }
  const std::vector<NodeIndex>& goals() const noexcept { return goals_; }
  bool is_goal(NodeIndex j) const { return children_.at(j).empty(); }

  const std::vector<NodeIndex>& children(NodeIndex j) const { return children_.at(j); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Evader travel time T(j,c); throws InvalidInput when (j,c) is not an edge.
  Time travel_time(NodeIndex j, NodeIndex c) const;

  bool has_coordinates() const noexcept { return has_coordinates_; }
  const std::optional<Point>& position(NodeIndex j) const { return positions_.at(j); }

  /// Raw description this network was built from (for re-serialization).
  NetworkDescription describe() const;

 private:
  friend RoadNetwork validate_network(const NetworkDescription&);

  NodeIndex entry_ = 0;
  std::vector<NodeIndex> goals_;
  std::vector<std::vector<NodeIndex>> children_;
  std::vector<Edge> edges_;
  std::vector<std::optional<Point>> positions_;
  bool has_coordinates_ = false;
};

/// Validates the standing assumptions (acyclic, entry not a goal, every node
/// on some entry->goal path, positive edge times) and derives the goal set.
RoadNetwork validate_network(const NetworkDescription& description);

struct EvaderPath {
  PathIndex index = 0;
  std::vector<NodeIndex> nodes;
  /// Arrival time at each position; arrival.front() == 0.
  std::vector<Time> arrival;

  Time length() const { return arrival.back(); }
  NodeIndex exit() const { return nodes.back(); }
};

enum class PathOrder {
  /// LeftToRight when every node has coordinates, else Lexicographic.
  Auto,
  Lexicographic,
  /// Depth-first with children visited by increasing x (ties by id).
  LeftToRight,
};

struct PathOptions {
  std::size_t cap = 63;
  PathOrder order = PathOrder::Auto;
};

std::vector<EvaderPath> enumerate_paths(const RoadNetwork& network,
                                        const PathOptions& options = {});

/// The L_j(k) table and P_j membership sets.
class VisitSchedule {
 public:
  VisitSchedule() = default;
  VisitSchedule(std::vector<std::vector<Time>> visits, std::size_t path_count);

  std::size_t node_count() const noexcept { return visits_.size(); }
  std::size_t path_count() const noexcept { return path_count_; }

  /// Evader visit time of node j on path k, or kNever.
  Time visit(NodeIndex j, PathIndex k) const { return visits_[j][k]; }
  const std::vector<Time>& row(NodeIndex j) const { return visits_.at(j); }
  /// P_j: paths through node j.
  const PathSet& through(NodeIndex j) const { return through_.at(j); }

  PathSet all_paths() const { return PathSet::all(path_count_); }

  /// Earliest visit of node j over the paths in `set` (kNever when none).
  Time earliest(NodeIndex j, const PathSet& set) const;
  Time latest(NodeIndex j, const PathSet& set) const;

 private:
  std::vector<std::vector<Time>> visits_;
  std::vector<PathSet> through_;
  std::size_t path_count_ = 0;
};

VisitSchedule build_schedule(std::span<const EvaderPath> paths, std::size_t node_count);

/// Pursuer travel-time table d_V(i,j).
class PursuerMetric {
 public:
  PursuerMetric() = default;
  explicit PursuerMetric(std::vector<std::vector<Time>> table);

  static PursuerMetric zero(std::size_t node_count);

  std::size_t node_count() const noexcept { return table_.size(); }
  Time operator()(NodeIndex i, NodeIndex j) const { return table_[i][j]; }
  const std::vector<std::vector<Time>>& table() const noexcept { return table_; }

  /// Hex digest of the table contents, stored alongside solve results.
  std::string digest() const;

 private:
  std::vector<std::vector<Time>> table_;
};

/// Straight-line distance divided by `speed`, checked against the speed
/// advantage on every edge.
PursuerMetric euclidean_metric(const RoadNetwork& network, double speed);

/// Smallest speed the Euclidean metric must exceed: max over edges of
/// dist(j,c) / T(j,c).
double speed_floor(const RoadNetwork& network);

struct MetricViolation {
  enum class Kind { Shape, Negative, Diagonal, Triangle, SpeedAdvantage };
  Kind kind;
  NodeIndex i = 0;
  NodeIndex j = 0;
  NodeIndex via = 0;  // middle node of a triangle violation
  std::string message;
};

struct MetricReport {
  std::vector<MetricViolation> violations;  // first few, in scan order
  std::size_t total = 0;

  bool ok() const noexcept { return total == 0; }
  /// Throws the Error matching the first violation, if any.
  void throw_if_invalid() const;
};

MetricReport validate_metric(const PursuerMetric& metric, const RoadNetwork& network,
                             std::size_t max_reported = 5);

/// Everything the solver, simulator and oracle read. Immutable and
/// shareable across threads.
struct Scenario {
  RoadNetwork network;
  std::vector<EvaderPath> paths;
  VisitSchedule schedule;
  PursuerMetric metric;

  std::size_t node_count() const noexcept { return network.node_count(); }
  std::size_t path_count() const noexcept { return paths.size(); }
  PathSet all_paths() const { return schedule.all_paths(); }

  Scenario with_metric(PursuerMetric other) const;
};

/// Enumerates paths, builds the schedule and validates `metric`.
Scenario make_scenario(RoadNetwork network, PursuerMetric metric,
                       const PathOptions& options = {});

}  // namespace ugs
