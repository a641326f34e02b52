#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ugs/network.hpp"
#include "ugs/path_set.hpp"
#include "ugs/time.hpp"

namespace ugs {

/// How a visit to u resolves the pursuer's uncertainty.
///
/// Paper: the visit splits I into I ∩ P_u and I \ P_u, and the split is
/// admissible when the green side can still be caught after the earliest red
/// visit time.
///
/// Strict: the UGS semantics taken literally. A red reading carries the
/// delay, so it names one visit-time group; a green reading only says the
/// evader has not come yet. Every arrival instant at u is considered, so the
/// value is exact for the sensor model the simulator plays.
enum class Resolution { Paper, Strict };

std::string_view to_string(Resolution r);

enum class MoveKind { Capture, Split };

struct Candidate {
  NodeIndex u = 0;
  /// Latest time the pursuer may reach u; the caller subtracts d(j,u).
  Time value = kNoGuarantee;
  MoveKind kind = MoveKind::Split;
};

struct SolveOptions {
  Resolution resolution = Resolution::Paper;
  /// Restrict the recursion to the realizable family (plus the subsets it
  /// references) instead of the full subset lattice.
  bool prune = true;
  /// Largest n for which the full lattice may be enumerated.
  std::size_t full_lattice_cap = 20;
};

struct PolicyEntry {
  Time D = kNoGuarantee;
  std::optional<NodeIndex> mu;
  bool capture = false;
};

struct SolveMetadata {
  Resolution resolution = Resolution::Paper;
  bool pruned = true;
  std::size_t n = 0;
  std::size_t m = 0;
  NodeIndex entry = 0;
  std::string metric_digest;
  /// Sets the recursion needed that the realizable family did not contain.
  std::vector<PathSet> missing;
};

/// D(j|I) and mu(j|I) for every node and every set in the solved family.
class SolveResult {
 public:
  SolveResult() = default;
  explicit SolveResult(SolveMetadata meta);

  const SolveMetadata& metadata() const noexcept { return meta_; }
  /// Solved sets in cardinality-major order.
  const std::vector<PathSet>& sets() const noexcept { return sets_; }
  bool contains(const PathSet& I) const { return index_.count(I) != 0; }

  /// nullptr when (j, I) was not solved.
  const PolicyEntry* find(NodeIndex j, const PathSet& I) const;
  /// Throws PolicyHole when (j, I) was not solved.
  const PolicyEntry& at(NodeIndex j, const PathSet& I) const;
  Time D(NodeIndex j, const PathSet& I) const { return at(j, I).D; }

  PathSet root_set() const { return PathSet::all(meta_.n); }
  const PolicyEntry& root() const { return at(meta_.entry, root_set()); }
  Time root_value() const { return root().D; }
  /// max(0, D(entry|I0)).
  Time tolerable_delay() const;

  /// Adds a row of m entries for I; used by the solver and by loaders.
  void insert(const PathSet& I, std::vector<PolicyEntry> row);
  void set_missing(std::vector<PathSet> missing) { meta_.missing = std::move(missing); }

 private:
  SolveMetadata meta_;
  std::vector<PathSet> sets_;
  std::vector<std::vector<PolicyEntry>> rows_;
  std::unordered_map<PathSet, std::size_t, PathSetHash> index_;
};

/// D(j|{k}) = |P_k| - d(j, exit_k).
Time base_case(const Scenario& scenario, NodeIndex j, PathIndex k);

/// Candidate moves for information I, one per useful node u. `memo` must
/// hold every proper subset of I the recursion reads.
std::vector<Candidate> candidate_moves(const Scenario& scenario, const PathSet& I,
                                       const SolveResult& memo, Resolution resolution);

/// Closure of `seed` under every subset either recursion reads, and hence
/// under every information set a physical play can reach.
std::vector<PathSet> close_family(const Scenario& scenario, std::vector<PathSet> seed);

SolveResult solve(const Scenario& scenario, const SolveOptions& options = {});

}  // namespace ugs
