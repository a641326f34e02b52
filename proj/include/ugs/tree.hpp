#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ugs/network.hpp"
#include "ugs/solver.hpp"

namespace ugs {

struct TreeNode {
  enum class Kind { Decision, Branch, CaptureLeaf };

  Kind kind = Kind::Decision;
  NodeIndex ugs = 0;
  PathSet set;
  /// D(ugs|set) for decisions, capture time for leaves.
  Time value = 0.0;
  /// Moves made before the branching observation (strict trees only).
  std::vector<NodeIndex> route;
  /// Resolution time of the observation that led here.
  std::optional<Time> at;
  std::vector<std::size_t> red;
  std::optional<std::size_t> green;
};

/// Policy tree rooted at (entry, I0). Node 0 is the root.
///
/// Paper resolution follows the membership split: red child (u, I ∩ P_u),
/// green child (u, I \ P_u), capture moves end in a leaf. Strict resolution
/// unrolls the policy from t0 = D(entry|I0) through the UGS readings; a red
/// edge per delay group, one green edge, and waits without news folded into
/// the node's route.
///
/// A Decision has red/green children. A Branch is a strict-mode node whose
/// move both captures some paths and leaves others in play.
class DecisionTree {
 public:
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& root() const { return nodes_.at(0); }
  std::size_t depth() const;
  std::size_t leaf_count() const;

  std::string to_dot() const;
  std::string to_json(int indent = 2) const;

 private:
  friend DecisionTree build_tree(const Scenario&, const SolveResult&);
  std::vector<TreeNode> nodes_;
  std::size_t depth_from(std::size_t i) const;
};

DecisionTree build_tree(const Scenario& scenario, const SolveResult& result);

}  // namespace ugs
