#include "ugs/information.hpp"

#include <algorithm>
#include <unordered_set>

#include "ugs/error.hpp"

namespace ugs {

namespace {

std::string where(NodeIndex u, Time t) {
  return "node " + std::to_string(u + 1) + " at t=" + std::to_string(t);
}

}  // namespace

PathSet update_red(const PathSet& I, NodeIndex u, Time t_plus, Time d,
                   const VisitSchedule& schedule) {
  if (!(d >= 0.0) || !std::isfinite(d) || time_lt(t_plus, d)) {
    throw Error(ErrorCode::InvalidInput, "red delay must lie in [0, t] at " + where(u, t_plus));
  }
  const Time passed = t_plus - d;
  PathSet out(I.universe());
  I.for_each([&](PathIndex k) {
    if (time_eq(schedule.visit(u, k), passed)) out.insert(k);
  });
  if (out.empty()) {
    throw Error(ErrorCode::InconsistentObservation,
                "no path in " + I.to_string() + " passes " + where(u, passed));
  }
  return out;
}

PathSet update_green(const PathSet& I, NodeIndex u, Time t_plus, const VisitSchedule& schedule) {
  PathSet out(I.universe());
  I.for_each([&](PathIndex k) {
    if (time_lt(t_plus, schedule.visit(u, k))) out.insert(k);
  });
  if (out.empty()) {
    throw Error(ErrorCode::InconsistentObservation,
                "every path in " + I.to_string() + " has already passed " + where(u, t_plus));
  }
  return out;
}

PathSet apply_observation(const PathSet& I, NodeIndex u, Time t_plus, const Observation& obs,
                          const VisitSchedule& schedule) {
  return obs.red ? update_red(I, u, t_plus, obs.delay, schedule)
                 : update_green(I, u, t_plus, schedule);
}

Partition partition(const PathSet& I, NodeIndex u, const VisitSchedule& schedule) {
  PathSet red = I & schedule.through(u);
  PathSet green = I - red;
  return {std::move(red), std::move(green)};
}

std::vector<VisitGroup> visit_groups(const PathSet& I, NodeIndex u, const VisitSchedule& schedule) {
  std::vector<std::pair<Time, PathIndex>> visits;
  I.for_each([&](PathIndex k) {
    const Time t = schedule.visit(u, k);
    if (t != kNever) visits.emplace_back(t, k);
  });
  std::sort(visits.begin(), visits.end());
  std::vector<VisitGroup> groups;
  for (const auto& [t, k] : visits) {
    if (groups.empty() || !time_eq(groups.back().time, t)) {
      groups.push_back({t, PathSet(I.universe())});
    }
    groups.back().members.insert(k);
  }
  return groups;
}

bool RealizableFamily::contains(const PathSet& s) const {
  return std::find(sets.begin(), sets.end(), s) != sets.end();
}

RealizableFamily realizable_sets(const VisitSchedule& schedule, std::span<const EvaderPath> paths,
                                 TieOrder ties) {
  const std::size_t n = schedule.path_count();
  const std::size_t m = schedule.node_count();

  // Snap times that agree within tolerance onto one value so that events
  // order consistently.
  std::vector<Time> times;
  for (NodeIndex j = 0; j < m; ++j) {
    for (Time t : schedule.row(j)) {
      if (t != kNever) times.push_back(t);
    }
  }
  std::sort(times.begin(), times.end());
  std::vector<Time> levels;
  for (Time t : times) {
    if (levels.empty() || !time_eq(levels.back(), t)) levels.push_back(t);
  }
  auto level_of = [&](Time t) {
    auto it = std::lower_bound(levels.begin(), levels.end(), t - kTimeEps);
    return static_cast<std::size_t>(it - levels.begin());
  };

  struct Event {
    std::size_t level;
    NodeIndex node;
  };
  std::vector<Event> events;
  for (NodeIndex j = 0; j < m; ++j) {
    std::vector<std::size_t> seen;
    for (Time t : schedule.row(j)) {
      if (t == kNever) continue;
      const std::size_t l = level_of(t);
      if (std::find(seen.begin(), seen.end(), l) == seen.end()) {
        seen.push_back(l);
        events.push_back({l, j});
      }
    }
  }
  std::sort(events.begin(), events.end(), [&](const Event& a, const Event& b) {
    if (a.level != b.level) return a.level < b.level;
    return ties == TieOrder::NodeAscending ? a.node < b.node : a.node > b.node;
  });

  std::vector<std::vector<PathIndex>> exits_at(levels.size());
  for (const auto& p : paths) exits_at[level_of(p.length())].push_back(p.index);

  RealizableFamily family;
  std::vector<PathSet> alive{PathSet::all(n)};
  std::unordered_set<PathSet, PathSetHash> in_alive{alive.front()};
  std::unordered_set<PathSet, PathSetHash> in_family{alive.front()};
  family.sets.push_back(alive.front());

  for (std::size_t e = 0; e < events.size(); ++e) {
    const auto [level, node] = events[e];
    EventRow row{node, levels[level], alive};
    const std::vector<PathSet> before = alive;
    for (const PathSet& S : before) {
      PathSet E(n);
      S.for_each([&](PathIndex k) {
        const Time t = schedule.visit(node, k);
        if (t != kNever && level_of(t) == level) E.insert(k);
      });
      if (E.empty() || E == S) continue;
      for (PathSet child : {E, S - E}) {
        if (in_alive.insert(child).second) {
          alive.push_back(child);
          row.sets.push_back(child);
        }
        if (in_family.insert(child).second) family.sets.push_back(child);
      }
    }
    family.log.push_back(std::move(row));

    const bool last_at_level = e + 1 == events.size() || events[e + 1].level != level;
    if (last_at_level && !exits_at[level].empty()) {
      std::vector<PathSet> kept;
      for (const PathSet& S : alive) {
        const bool exited = std::any_of(exits_at[level].begin(), exits_at[level].end(),
                                        [&](PathIndex k) { return S.contains(k); });
        if (exited) {
          in_alive.erase(S);
        } else {
          kept.push_back(S);
        }
      }
      alive = std::move(kept);
    }
  }
  std::sort(family.sets.begin(), family.sets.end(), cardinality_less);
  return family;
}

}  // namespace ugs
