#include "ugs/solver.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "ugs/error.hpp"
#include "ugs/information.hpp"

namespace ugs {

std::string_view to_string(Resolution r) { return r == Resolution::Paper ? "paper" : "strict"; }

SolveResult::SolveResult(SolveMetadata meta) : meta_(std::move(meta)) {}

const PolicyEntry* SolveResult::find(NodeIndex j, const PathSet& I) const {
  auto it = index_.find(I);
  if (it == index_.end() || j >= rows_[it->second].size()) return nullptr;
  return &rows_[it->second][j];
}

const PolicyEntry& SolveResult::at(NodeIndex j, const PathSet& I) const {
  const PolicyEntry* e = find(j, I);
  if (e == nullptr) {
    throw Error(ErrorCode::PolicyHole,
                "no policy entry for node " + std::to_string(j + 1) + " and set " + I.to_string());
  }
  return *e;
}

Time SolveResult::tolerable_delay() const { return std::max<Time>(0.0, root_value()); }

void SolveResult::insert(const PathSet& I, std::vector<PolicyEntry> row) {
  auto [it, fresh] = index_.emplace(I, sets_.size());
  if (fresh) {
    sets_.push_back(I);
    rows_.push_back(std::move(row));
  } else {
    rows_[it->second] = std::move(row);
  }
}

Time base_case(const Scenario& scenario, NodeIndex j, PathIndex k) {
  const EvaderPath& p = scenario.paths.at(k);
  return p.length() - scenario.metric(j, p.exit());
}

namespace {

std::optional<Candidate> paper_move(const Scenario& s, const PathSet& I, NodeIndex u,
                                    const SolveResult& memo) {
  const auto [red, green] = partition(I, u, s.schedule);
  if (red.empty()) return std::nullopt;
  const Time first = s.schedule.earliest(u, red);
  if (green.empty()) return Candidate{u, first, MoveKind::Capture};
  const Time d_green = memo.D(u, green);
  if (time_lt(d_green, first)) return std::nullopt;
  return Candidate{u, std::min(memo.D(u, red), d_green), MoveKind::Split};
}

// Arrival instants at u split into: a <= t_1, the open gaps (t_i, t_i+1),
// the points t_i+1, and the tail after t_r. Each is feasible when every
// observation it can produce leaves the pursuer inside its guarantee; the
// candidate value is the supremum of feasible arrival times.
std::optional<Candidate> strict_move(const Scenario& s, const PathSet& I, NodeIndex u,
                                     const SolveResult& memo) {
  const auto groups = visit_groups(I, u, s.schedule);
  if (groups.empty()) return std::nullopt;
  const std::size_t r = groups.size();

  // rest[i] = paths of I not yet seen after the first i groups.
  std::vector<PathSet> rest{I};
  for (const auto& g : groups) rest.push_back(rest.back() - g.members);
  auto rest_ok = [&](std::size_t i, Time a) {
    return rest[i].empty() || time_le(a, memo.D(u, rest[i]));
  };

  Time best = kNoGuarantee;
  bool waits_from_start = false;
  if (rest_ok(1, groups[0].time)) {
    best = groups[0].time;
    waits_from_start = true;
  }
  if (!(groups[0].members == I)) {
    Time red_bound = kNever;  // min over the red groups already seen
    for (std::size_t i = 1; i <= r; ++i) {
      red_bound = std::min(red_bound, memo.D(u, groups[i - 1].members));
      Time bound = red_bound;
      if (!rest[i].empty()) bound = std::min(bound, memo.D(u, rest[i]));
      const Time lo = groups[i - 1].time;
      const Time hi = i < r ? groups[i].time : kNever;
      if (time_lt(lo, bound)) {
        const Time sup = std::min(bound, hi);
        if (time_lt(best, sup)) {
          best = sup;
          waits_from_start = false;
        }
      }
      if (i < r) {
        const Time a = groups[i].time;
        if (time_le(a, red_bound) && rest_ok(i + 1, a) && time_lt(best, a)) {
          best = a;
          waits_from_start = false;
        }
      }
    }
  }
  if (best == kNoGuarantee) return std::nullopt;
  const bool all_pass = I.is_subset_of(s.schedule.through(u));
  return Candidate{u, best, waits_from_start && all_pass ? MoveKind::Capture : MoveKind::Split};
}

void add_subset(const PathSet& S, const PathSet& I, std::vector<PathSet>& out) {
  if (!S.empty() && !(S == I)) out.push_back(S);
}

}  // namespace

std::vector<Candidate> candidate_moves(const Scenario& scenario, const PathSet& I,
                                       const SolveResult& memo, Resolution resolution) {
  std::vector<Candidate> out;
  for (NodeIndex u = 0; u < scenario.node_count(); ++u) {
    auto c = resolution == Resolution::Paper ? paper_move(scenario, I, u, memo)
                                             : strict_move(scenario, I, u, memo);
    if (c) out.push_back(*c);
  }
  return out;
}

std::vector<PathSet> close_family(const Scenario& scenario, std::vector<PathSet> seed) {
  const std::size_t n = scenario.path_count();
  for (PathIndex k = 0; k < n; ++k) seed.push_back(PathSet::of(n, {k}));

  std::unordered_set<PathSet, PathSetHash> known;
  std::deque<PathSet> queue;
  std::vector<PathSet> out;
  for (auto& S : seed) {
    if (!S.empty() && known.insert(S).second) {
      queue.push_back(S);
      out.push_back(S);
    }
  }
  std::vector<PathSet> next;
  while (!queue.empty()) {
    const PathSet I = queue.front();
    queue.pop_front();
    if (I.size() < 2) continue;
    next.clear();
    for (NodeIndex u = 0; u < scenario.node_count(); ++u) {
      const auto [red, green] = partition(I, u, scenario.schedule);
      add_subset(red, I, next);
      add_subset(green, I, next);
      PathSet rest = I;
      for (const auto& g : visit_groups(I, u, scenario.schedule)) {
        add_subset(g.members, I, next);
        rest = rest - g.members;
        add_subset(rest, I, next);
      }
    }
    for (auto& S : next) {
      if (known.insert(S).second) {
        queue.push_back(S);
        out.push_back(S);
      }
    }
  }
  std::sort(out.begin(), out.end(), cardinality_less);
  return out;
}

SolveResult solve(const Scenario& scenario, const SolveOptions& options) {
  const std::size_t n = scenario.path_count();
  const std::size_t m = scenario.node_count();

  SolveMetadata meta;
  meta.resolution = options.resolution;
  meta.pruned = options.prune;
  meta.n = n;
  meta.m = m;
  meta.entry = scenario.network.entry();
  meta.metric_digest = scenario.metric.digest();

  std::vector<PathSet> seed;
  if (options.prune) {
    seed = realizable_sets(scenario.schedule, scenario.paths).sets;
  } else {
    if (n > options.full_lattice_cap || n > 63) {
      throw Error(ErrorCode::CapExceeded, "full lattice over " + std::to_string(n) +
                                              " paths exceeds the cap of " +
                                              std::to_string(options.full_lattice_cap));
    }
    const std::uint64_t top = (std::uint64_t{1} << n) - 1;
    seed.reserve(top);
    for (std::uint64_t mask = 1; mask <= top; ++mask) seed.push_back(PathSet::from_mask(n, mask));
  }
  const std::unordered_set<PathSet, PathSetHash> seeded(seed.begin(), seed.end());
  const std::vector<PathSet> family = close_family(scenario, seed);

  SolveResult result(meta);
  std::vector<PathSet> missing;
  for (const PathSet& I : family) {
    if (!seeded.count(I)) missing.push_back(I);
    std::vector<PolicyEntry> row(m);
    if (I.size() == 1) {
      const PathIndex k = I.members().front();
      for (NodeIndex j = 0; j < m; ++j) {
        row[j] = {base_case(scenario, j, k), scenario.paths[k].exit(), true};
      }
      result.insert(I, std::move(row));
      continue;
    }
    const auto moves = candidate_moves(scenario, I, result, options.resolution);
    for (NodeIndex j = 0; j < m; ++j) {
      PolicyEntry& e = row[j];
      for (const Candidate& c : moves) {
        const Time v = c.value - scenario.metric(j, c.u);
        const bool better = !e.mu || time_lt(e.D, v) ||
                            (time_eq(e.D, v) && c.kind == MoveKind::Capture && !e.capture);
        if (better) e = {v, c.u, c.kind == MoveKind::Capture};
      }
    }
    result.insert(I, std::move(row));
  }
  result.set_missing(std::move(missing));
  return result;
}

}  // namespace ugs
