#include "ugs/tree.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "ugs/error.hpp"
#include "ugs/information.hpp"
#include "ugs/simulator.hpp"

namespace ugs {

namespace {

class Builder {
 public:
  Builder(const Scenario& s, const SolveResult& r, std::vector<TreeNode>& nodes)
      : s_(s), r_(r), nodes_(nodes) {}

  std::size_t leaf(NodeIndex u, const PathSet& set, Time t, std::optional<Time> at) {
    TreeNode n;
    n.kind = TreeNode::Kind::CaptureLeaf;
    n.ugs = u;
    n.set = set;
    n.value = t;
    n.at = at;
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::size_t decision(NodeIndex j, const PathSet& I, std::optional<Time> at) {
    TreeNode n;
    n.ugs = j;
    n.set = I;
    n.value = r_.D(j, I);
    n.at = at;
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::size_t paper(NodeIndex j, const PathSet& I, std::optional<Time> at) {
    const std::size_t id = decision(j, I, at);
    if (I.size() == 1) {
      const auto& p = s_.paths[I.members().front()];
      const std::size_t c = leaf(p.exit(), I, p.length(), std::nullopt);
      nodes_[id].red.push_back(c);
      return id;
    }
    const PolicyEntry& e = r_.at(j, I);
    if (!e.mu) return id;
    const NodeIndex u = *e.mu;
    if (e.capture) {
      const std::size_t c = leaf(u, I, s_.schedule.earliest(u, I), std::nullopt);
      nodes_[id].red.push_back(c);
      return id;
    }
    const auto [red, green] = partition(I, u, s_.schedule);
    const Time known = s_.schedule.earliest(u, red);
    const std::size_t rc = paper(u, red, known);
    const std::size_t gc = paper(u, green, known);
    nodes_[id].red.push_back(rc);
    nodes_[id].green = gc;
    return id;
  }

  std::size_t strict(NodeIndex p, const PathSet& I, Time t, std::optional<Time> at) {
    const std::size_t id = decision(p, I, at);
    std::vector<NodeIndex> route;
    const std::size_t guard = 2 * s_.path_count() + s_.node_count() + 2;
    for (std::size_t step = 0; step < guard; ++step) {
      const PolicyEntry& e = r_.at(p, I);
      const NodeIndex u = e.mu.value_or(p);
      std::vector<std::size_t> red;
      std::optional<std::size_t> green;
      if (u != p) {
        const Time a = t + s_.metric(p, u);
        const MoveOutcome o = resolve_move(I, u, a, s_.schedule);
        const bool nothing_new = o.captured.empty() &&
                                 ((o.red.empty() && o.green == I) ||
                                  (o.red.size() == 1 && o.red.front().members == I));
        if (nothing_new) {
          route.push_back(u);
          p = u;
          t = a;
          continue;
        }
        route.push_back(u);
        if (!o.captured.empty()) red.push_back(leaf(u, o.captured, a, a));
        for (const auto& g : o.red) red.push_back(strict(u, g.members, a, a));
        if (!o.green.empty()) green = strict(u, o.green, a, a);
      } else {
        Time next = kNever;
        I.for_each([&](PathIndex q) {
          const Time v = s_.schedule.visit(p, q);
          if (time_lt(t, v)) next = std::min(next, v);
        });
        if (next == kNever) break;
        route.push_back(p);
        const PathSet caught = update_red(I, p, next, 0.0, s_.schedule);
        red.push_back(leaf(p, caught, next, next));
        const PathSet rest = I - caught;
        if (!rest.empty()) green = strict(p, rest, next, next);
      }
      TreeNode& n = nodes_[id];
      n.route = std::move(route);
      n.red = std::move(red);
      n.green = green;
      const bool captures = std::any_of(n.red.begin(), n.red.end(), [&](std::size_t c) {
        return nodes_[c].kind == TreeNode::Kind::CaptureLeaf;
      });
      if (captures && n.red.size() + (n.green ? 1 : 0) > 1) n.kind = TreeNode::Kind::Branch;
      return id;
    }
    if (!route.empty()) nodes_[id].route = std::move(route);
    if (nodes_[id].red.empty() && !nodes_[id].green) return id;
    throw Error(ErrorCode::NonTermination, "policy from set " + I.to_string() + " does not resolve");
  }

 private:
  const Scenario& s_;
  const SolveResult& r_;
  std::vector<TreeNode>& nodes_;
};

std::string kind_name(TreeNode::Kind k) {
  switch (k) {
    case TreeNode::Kind::Decision: return "decision";
    case TreeNode::Kind::Branch: return "branch";
    case TreeNode::Kind::CaptureLeaf: return "capture-leaf";
  }
  return "decision";
}

std::string fmt(Time t) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << t;
  return os.str();
}

nlohmann::json set_json(const PathSet& s) {
  nlohmann::json a = nlohmann::json::array();
  s.for_each([&](PathIndex k) { a.push_back(k + 1); });
  return a;
}

}  // namespace

DecisionTree build_tree(const Scenario& scenario, const SolveResult& result) {
  DecisionTree tree;
  Builder b(scenario, result, tree.nodes_);
  const NodeIndex entry = scenario.network.entry();
  const PathSet all = scenario.all_paths();
  if (result.metadata().resolution == Resolution::Paper) {
    b.paper(entry, all, std::nullopt);
  } else {
    const Time t0 = std::max<Time>(0.0, result.root_value());
    if (time_eq(t0, 0.0)) {
      b.decision(entry, all, std::nullopt);
      const std::size_t c = b.leaf(entry, all, 0.0, 0.0);
      tree.nodes_[0].red.push_back(c);
    } else {
      b.strict(entry, all, t0, std::nullopt);
    }
  }
  return tree;
}

std::size_t DecisionTree::depth_from(std::size_t i) const {
  const TreeNode& n = nodes_[i];
  if (n.kind == TreeNode::Kind::CaptureLeaf) return 0;
  std::size_t d = 0;
  for (std::size_t c : n.red) d = std::max(d, depth_from(c));
  if (n.green) d = std::max(d, depth_from(*n.green));
  return d + 1;
}

std::size_t DecisionTree::depth() const { return nodes_.empty() ? 0 : depth_from(0); }

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) {
    return n.kind == TreeNode::Kind::CaptureLeaf;
  }));
}

std::string DecisionTree::to_dot() const {
  std::ostringstream os;
  os << "digraph DecisionTree {\n  rankdir=TB;\n  node [fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& n = nodes_[i];
    os << "  n" << i << " [";
    if (n.kind == TreeNode::Kind::CaptureLeaf) {
      os << "shape=ellipse, label=\"capture at UGS " << n.ugs + 1 << " | " << n.set.to_string()
         << " | t=" << fmt(n.value) << "\"";
    } else {
      os << "shape=box, label=\"UGS " << n.ugs + 1 << " | " << n.set.to_string() << " | D=" << fmt(n.value);
      if (!n.route.empty()) {
        os << " | via";
        for (NodeIndex r : n.route) os << ' ' << r + 1;
      }
      os << "\"";
    }
    os << "];\n";
  }
  auto edge = [&](std::size_t from, std::size_t to, const char* colour) {
    os << "  n" << from << " -> n" << to << " [color=" << colour << ", label=\"" << colour;
    if (nodes_[to].at) os << " @" << fmt(*nodes_[to].at);
    os << "\"];\n";
  };
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t c : nodes_[i].red) edge(i, c, "red");
    if (nodes_[i].green) edge(i, *nodes_[i].green, "green");
  }
  os << "}\n";
  return os.str();
}

std::string DecisionTree::to_json(int indent) const {
  auto node = [&](auto&& self, std::size_t i) -> nlohmann::json {
    const TreeNode& n = nodes_[i];
    nlohmann::json j;
    j["ugs"] = n.ugs + 1;
    j["set"] = set_json(n.set);
    j["D"] = n.value;
    j["kind"] = kind_name(n.kind);
    if (n.at) j["at"] = *n.at;
    if (!n.route.empty()) {
      j["route"] = nlohmann::json::array();
      for (NodeIndex r : n.route) j["route"].push_back(r + 1);
    }
    if (n.kind != TreeNode::Kind::CaptureLeaf) {
      nlohmann::json red = nlohmann::json::array();
      for (std::size_t c : n.red) red.push_back(self(self, c));
      j["children"] = {{"red", red}, {"green", n.green ? self(self, *n.green) : nlohmann::json(nullptr)}};
    }
    return j;
  };
  if (nodes_.empty()) return "null";
  return node(node, 0).dump(indent);
}

}  // namespace ugs
