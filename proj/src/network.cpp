#include "ugs/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <tuple>
#include <queue>
#include <set>
#include <sstream>

#include "ugs/error.hpp"

namespace ugs {

namespace {

std::string node_name(NodeIndex j) { return std::to_string(j + 1); }

std::string edge_name(NodeIndex a, NodeIndex b) {
  return "(" + node_name(a) + "," + node_name(b) + ")";
}

}  // namespace

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

Time RoadNetwork::travel_time(NodeIndex j, NodeIndex c) const {
  for (const Edge& e : edges_) {
    if (e.from == j && e.to == c) return e.time;
  }
  throw Error(ErrorCode::InvalidInput, "no edge " + edge_name(j, c));
}

NetworkDescription RoadNetwork::describe() const {
  NetworkDescription d;
  for (NodeIndex j = 0; j < node_count(); ++j) {
    NetworkDescription::Node n;
    n.id = static_cast<int>(j + 1);
    if (positions_[j]) {
      n.x = positions_[j]->x;
      n.y = positions_[j]->y;
    }
    d.nodes.push_back(n);
  }
  for (const Edge& e : edges_) {
    d.edges.push_back({static_cast<int>(e.from + 1), static_cast<int>(e.to + 1), e.time});
  }
  d.entry = static_cast<int>(entry_ + 1);
  std::vector<int> goals;
  for (NodeIndex g : goals_) goals.push_back(static_cast<int>(g + 1));
  d.goals = goals;
  return d;
}

RoadNetwork validate_network(const NetworkDescription& description) {
  const std::size_t m = description.nodes.size();
  if (m == 0) throw Error(ErrorCode::InvalidInput, "network has no nodes");

  std::vector<bool> seen(m, false);
  RoadNetwork net;
  net.positions_.assign(m, std::nullopt);
  std::size_t with_coords = 0;
  for (const auto& n : description.nodes) {
    if (n.id < 1 || static_cast<std::size_t>(n.id) > m) {
      throw Error(ErrorCode::InvalidInput, "node ids must be contiguous 1.." + std::to_string(m) +
                                               ", got " + std::to_string(n.id));
    }
    const auto j = static_cast<NodeIndex>(n.id - 1);
    if (seen[j]) throw Error(ErrorCode::InvalidInput, "duplicate node id " + std::to_string(n.id));
    seen[j] = true;
    if (n.x.has_value() != n.y.has_value()) {
      throw Error(ErrorCode::InvalidInput, "node " + std::to_string(n.id) + " has only one coordinate");
    }
    if (n.x) {
      if (!std::isfinite(*n.x) || !std::isfinite(*n.y)) {
        throw Error(ErrorCode::InvalidInput, "node " + std::to_string(n.id) + " has a non-finite coordinate");
      }
      net.positions_[j] = Point{*n.x, *n.y};
      ++with_coords;
    }
  }
  net.has_coordinates_ = with_coords == m;

  auto check_id = [&](int id, const char* what) {
    if (id < 1 || static_cast<std::size_t>(id) > m) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + " refers to unknown node " + std::to_string(id));
    }
    return static_cast<NodeIndex>(id - 1);
  };

  net.children_.assign(m, {});
  std::set<std::pair<NodeIndex, NodeIndex>> edge_set;
  for (const auto& e : description.edges) {
    const NodeIndex a = check_id(e.from, "edge");
    const NodeIndex b = check_id(e.to, "edge");
    if (!(e.time > 0.0) || !std::isfinite(e.time)) {
      throw Error(ErrorCode::NonPositiveEdgeTime, "edge " + edge_name(a, b) + " has travel time " +
                                                      std::to_string(e.time));
    }
    if (a == b) throw Error(ErrorCode::CycleDetected, "self-loop at node " + node_name(a));
    if (!edge_set.insert({a, b}).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate edge " + edge_name(a, b));
    }
    net.edges_.push_back({a, b, e.time});
    net.children_[a].push_back(b);
  }
  for (auto& c : net.children_) std::sort(c.begin(), c.end());
  std::sort(net.edges_.begin(), net.edges_.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });

  // Kahn's algorithm; leftover nodes sit on a cycle.
  std::vector<std::size_t> indegree(m, 0);
  for (const Edge& e : net.edges_) ++indegree[e.to];
  std::queue<NodeIndex> ready;
  for (NodeIndex j = 0; j < m; ++j) {
    if (indegree[j] == 0) ready.push(j);
  }
  std::size_t ordered = 0;
  while (!ready.empty()) {
    const NodeIndex j = ready.front();
    ready.pop();
    ++ordered;
    for (NodeIndex c : net.children_[j]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (ordered != m) {
    for (NodeIndex j = 0; j < m; ++j) {
      if (indegree[j] != 0) {
        throw Error(ErrorCode::CycleDetected, "node " + node_name(j) + " lies on a directed cycle");
      }
    }
  }

  net.entry_ = check_id(description.entry, "entry");
  for (NodeIndex j = 0; j < m; ++j) {
    if (net.children_[j].empty()) net.goals_.push_back(j);
  }
  if (net.children_[net.entry_].empty()) {
    throw Error(ErrorCode::EntryIsGoal, "entry node " + node_name(net.entry_) + " has no children");
  }

  // In a DAG every node reaches a childless node, so lying on an entry->goal
  // path is the same as being reachable from the entry.
  std::vector<bool> reach(m, false);
  std::vector<NodeIndex> stack{net.entry_};
  reach[net.entry_] = true;
  while (!stack.empty()) {
    const NodeIndex j = stack.back();
    stack.pop_back();
    for (NodeIndex c : net.children_[j]) {
      if (!reach[c]) {
        reach[c] = true;
        stack.push_back(c);
      }
    }
  }
  for (NodeIndex j = 0; j < m; ++j) {
    if (!reach[j]) {
      throw Error(ErrorCode::UnreachableNode, "node " + node_name(j) + " is not reachable from the entry");
    }
  }

  if (description.goals) {
    std::set<NodeIndex> declared;
    for (int g : *description.goals) declared.insert(check_id(g, "goal"));
    const std::set<NodeIndex> derived(net.goals_.begin(), net.goals_.end());
    if (declared != derived) {
      std::ostringstream os;
      os << "declared goals differ from childless nodes {";
      bool first = true;
      for (NodeIndex g : derived) {
        os << (first ? "" : ",") << g + 1;
        first = false;
      }
      os << "}";
      throw Error(ErrorCode::GoalMismatch, os.str());
    }
  }
  return net;
}

std::vector<EvaderPath> enumerate_paths(const RoadNetwork& network, const PathOptions& options) {
  const std::size_t m = network.node_count();
  PathOrder order = options.order;
  if (order == PathOrder::Auto) {
    order = network.has_coordinates() ? PathOrder::LeftToRight : PathOrder::Lexicographic;
  }

  // Count first so a huge network fails fast instead of exhausting memory.
  std::vector<std::uint64_t> count(m, 0);
  std::vector<bool> done(m, false);
  const std::uint64_t limit = static_cast<std::uint64_t>(options.cap) + 1;
  auto count_from = [&](auto&& self, NodeIndex j) -> std::uint64_t {
    if (done[j]) return count[j];
    std::uint64_t c = network.children(j).empty() ? 1 : 0;
    for (NodeIndex ch : network.children(j)) c = std::min(limit, c + self(self, ch));
    done[j] = true;
    return count[j] = c;
  };
  if (count_from(count_from, network.entry()) > options.cap) {
    throw Error(ErrorCode::PathExplosion, "more than " + std::to_string(options.cap) + " entry-goal paths");
  }

  std::vector<std::vector<NodeIndex>> kids(m);
  for (NodeIndex j = 0; j < m; ++j) {
    kids[j] = network.children(j);
    if (order == PathOrder::LeftToRight) {
      std::stable_sort(kids[j].begin(), kids[j].end(), [&](NodeIndex a, NodeIndex b) {
        const double xa = network.position(a)->x;
        const double xb = network.position(b)->x;
        if (xa != xb) return xa < xb;
        return a < b;
      });
    }
  }

  std::vector<EvaderPath> paths;
  EvaderPath current;
  current.nodes.push_back(network.entry());
  current.arrival.push_back(0.0);
  auto dfs = [&](auto&& self) -> void {
    const NodeIndex j = current.nodes.back();
    if (kids[j].empty()) {
      current.index = paths.size();
      paths.push_back(current);
      return;
    }
    for (NodeIndex c : kids[j]) {
      current.nodes.push_back(c);
      current.arrival.push_back(current.arrival.back() + network.travel_time(j, c));
      self(self);
      current.nodes.pop_back();
      current.arrival.pop_back();
    }
  };
  dfs(dfs);
  return paths;
}

VisitSchedule::VisitSchedule(std::vector<std::vector<Time>> visits, std::size_t path_count)
    : visits_(std::move(visits)), path_count_(path_count) {
  through_.reserve(visits_.size());
  for (const auto& row : visits_) {
    PathSet s(path_count_);
    for (PathIndex k = 0; k < path_count_; ++k) {
      if (row[k] != kNever) s.insert(k);
    }
    through_.push_back(std::move(s));
  }
}

Time VisitSchedule::earliest(NodeIndex j, const PathSet& set) const {
  Time best = kNever;
  set.for_each([&](PathIndex k) { best = std::min(best, visits_[j][k]); });
  return best;
}

Time VisitSchedule::latest(NodeIndex j, const PathSet& set) const {
  Time best = kNoGuarantee;
  set.for_each([&](PathIndex k) {
    if (visits_[j][k] != kNever) best = std::max(best, visits_[j][k]);
  });
  return best;
}

VisitSchedule build_schedule(std::span<const EvaderPath> paths, std::size_t node_count) {
  if (paths.empty()) throw Error(ErrorCode::InvalidInput, "no evader paths");
  const std::size_t n = paths.size();
  std::vector<std::vector<Time>> visits(node_count, std::vector<Time>(n, kNever));
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = paths[k];
    if (p.nodes.size() != p.arrival.size() || p.nodes.empty()) {
      throw Error(ErrorCode::InvalidInput, "path " + std::to_string(k + 1) + " is malformed");
    }
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      if (p.nodes[i] >= node_count) {
        throw Error(ErrorCode::InvalidInput, "path " + std::to_string(k + 1) + " leaves the network");
      }
      visits[p.nodes[i]][k] = p.arrival[i];
    }
  }
  for (NodeIndex j = 0; j < node_count; ++j) {
    if (std::all_of(visits[j].begin(), visits[j].end(), [](Time t) { return t == kNever; })) {
      throw Error(ErrorCode::OrphanUgs, "node " + node_name(j) + " lies on no evader path");
    }
  }
  return VisitSchedule(std::move(visits), n);
}

PursuerMetric::PursuerMetric(std::vector<std::vector<Time>> table) : table_(std::move(table)) {}

PursuerMetric PursuerMetric::zero(std::size_t node_count) {
  return PursuerMetric(std::vector<std::vector<Time>>(node_count, std::vector<Time>(node_count, 0.0)));
}

std::string PursuerMetric::digest() const {
  // FNV-1a over the raw doubles.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(table_.size());
  for (const auto& row : table_) {
    for (Time t : row) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, &t, sizeof bits);
      mix(bits);
    }
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

double speed_floor(const RoadNetwork& network) {
  if (!network.has_coordinates()) {
    throw Error(ErrorCode::InvalidInput, "speed floor needs coordinates on every node");
  }
  double v = 0.0;
  for (const Edge& e : network.edges()) {
    v = std::max(v, distance(*network.position(e.from), *network.position(e.to)) / e.time);
  }
  return v;
}

PursuerMetric euclidean_metric(const RoadNetwork& network, double speed) {
  if (!network.has_coordinates()) {
    throw Error(ErrorCode::InvalidInput, "Euclidean metric needs coordinates on every node");
  }
  if (!(speed > 0.0) || std::isnan(speed)) {
    throw Error(ErrorCode::InvalidInput, "pursuer speed must be positive");
  }
  const std::size_t m = network.node_count();
  std::vector<std::vector<Time>> d(m, std::vector<Time>(m, 0.0));
  for (NodeIndex i = 0; i < m; ++i) {
    for (NodeIndex j = 0; j < m; ++j) {
      d[i][j] = i == j ? 0.0 : distance(*network.position(i), *network.position(j)) / speed;
    }
  }
  PursuerMetric metric(std::move(d));
  validate_metric(metric, network).throw_if_invalid();
  return metric;
}

void MetricReport::throw_if_invalid() const {
  if (violations.empty()) return;
  const auto& v = violations.front();
  ErrorCode code = ErrorCode::InvalidInput;
  switch (v.kind) {
    case MetricViolation::Kind::Shape:
    case MetricViolation::Kind::Negative: code = ErrorCode::InvalidInput; break;
    case MetricViolation::Kind::Diagonal: code = ErrorCode::NonZeroDiagonal; break;
    case MetricViolation::Kind::Triangle: code = ErrorCode::TriangleViolation; break;
    case MetricViolation::Kind::SpeedAdvantage: code = ErrorCode::SpeedAdvantageViolated; break;
  }
  std::string msg = v.message;
  if (total > 1) msg += " (" + std::to_string(total - 1) + " more)";
  throw Error(code, msg);
}

MetricReport validate_metric(const PursuerMetric& metric, const RoadNetwork& network,
                             std::size_t max_reported) {
  MetricReport report;
  auto add = [&](MetricViolation v) {
    ++report.total;
    if (report.violations.size() < max_reported) report.violations.push_back(std::move(v));
  };
  const std::size_t m = network.node_count();
  const auto& d = metric.table();
  bool shape_ok = d.size() == m;
  for (const auto& row : d) shape_ok = shape_ok && row.size() == m;
  if (!shape_ok) {
    add({MetricViolation::Kind::Shape, 0, 0, 0, "metric table must be " + std::to_string(m) + "x" + std::to_string(m)});
    return report;
  }
  bool values_ok = true;
  for (NodeIndex i = 0; i < m; ++i) {
    for (NodeIndex j = 0; j < m; ++j) {
      if (!(d[i][j] >= 0.0) || !std::isfinite(d[i][j])) {
        add({MetricViolation::Kind::Negative, i, j, 0,
             "d" + edge_name(i, j) + " must be finite and nonnegative"});
        values_ok = false;
      }
    }
  }
  if (!values_ok) return report;
  for (NodeIndex j = 0; j < m; ++j) {
    if (d[j][j] != 0.0) {
      add({MetricViolation::Kind::Diagonal, j, j, 0, "d" + edge_name(j, j) + " is not zero"});
    }
  }
  for (NodeIndex i = 0; i < m; ++i) {
    for (NodeIndex j = 0; j < m; ++j) {
      for (NodeIndex s = 0; s < m; ++s) {
        const Time via = d[i][s] + d[s][j];
        if (d[i][j] > via + kTimeEps * (1.0 + via)) {
          add({MetricViolation::Kind::Triangle, i, j, s,
               "triangle inequality fails for (" + node_name(i) + "," + node_name(s) + "," +
                   node_name(j) + ")"});
        }
      }
    }
  }
  for (const Edge& e : network.edges()) {
    if (!(d[e.from][e.to] < e.time)) {
      add({MetricViolation::Kind::SpeedAdvantage, e.from, e.to, 0,
           "pursuer is not faster than the evader on edge " + edge_name(e.from, e.to)});
    }
  }
  return report;
}

Scenario Scenario::with_metric(PursuerMetric other) const {
  validate_metric(other, network).throw_if_invalid();
  Scenario s = *this;
  s.metric = std::move(other);
  return s;
}

Scenario make_scenario(RoadNetwork network, PursuerMetric metric, const PathOptions& options) {
  validate_metric(metric, network).throw_if_invalid();
  Scenario s;
  s.paths = enumerate_paths(network, options);
  s.schedule = build_schedule(s.paths, network.node_count());
  s.network = std::move(network);
  s.metric = std::move(metric);
  return s;
}

}  // namespace ugs
