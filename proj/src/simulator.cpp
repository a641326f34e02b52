#include "ugs/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ugs/error.hpp"

namespace ugs {

MoveOutcome resolve_move(const PathSet& I, NodeIndex u, Time arrival, const VisitSchedule& schedule) {
  MoveOutcome out{PathSet(I.universe()), {}, PathSet(I.universe())};
  PathSet passed(I.universe());
  I.for_each([&](PathIndex k) {
    const Time t = schedule.visit(u, k);
    if (time_eq(t, arrival)) {
      out.captured.insert(k);
    } else if (t < arrival) {
      passed.insert(k);
    } else {
      out.green.insert(k);
    }
  });
  out.red = visit_groups(passed, u, schedule);
  return out;
}

SimOutcome simulate(const Scenario& scenario, const SolveResult& policy, PathIndex k, Time t0) {
  const std::size_t n = scenario.path_count();
  if (k >= n) throw Error(ErrorCode::InvalidInput, "no evader path " + std::to_string(k + 1));
  if (!(t0 >= 0.0) || !std::isfinite(t0)) {
    throw Error(ErrorCode::InvalidInput, "initial delay must be finite and nonnegative");
  }
  const VisitSchedule& L = scenario.schedule;
  const EvaderPath& path = scenario.paths[k];
  const Time exit_time = path.length();

  SimOutcome out;
  out.path = k;
  auto finish = [&](SimOutcome::Kind kind, Time t, NodeIndex node) {
    out.kind = kind;
    out.time = t;
    out.node = node;
    return out;
  };
  auto escaped = [&]() { return finish(SimOutcome::Kind::Escaped, exit_time, path.exit()); };
  auto captured = [&](NodeIndex node, Time t, const PathSet& I) {
    out.transcript.push_back({t, node, Observation::red_after(0.0), update_red(I, node, t, 0.0, L)});
    return finish(SimOutcome::Kind::Captured, t, node);
  };

  NodeIndex p = scenario.network.entry();
  Time t = t0;
  PathSet I = PathSet::all(n);
  if (time_eq(L.visit(p, k), t)) return captured(p, t, I);
  I = update_red(I, p, t, t - L.visit(p, k), L);
  out.transcript.push_back({t, p, Observation::red_after(t - L.visit(p, k)), I});

  const std::size_t max_epochs = 2 * n + scenario.node_count() + 2;
  for (std::size_t epoch = 0; epoch < max_epochs; ++epoch) {
    const PolicyEntry& entry = policy.at(p, I);
    const NodeIndex u = entry.mu.value_or(p);
    if (u != p) {
      const Time a = t + scenario.metric(p, u);
      const Time seen = L.visit(u, k);
      if (time_eq(seen, a)) return captured(u, a, I);
      if (time_lt(exit_time, a)) return escaped();
      const Observation obs = seen < a ? Observation::red_after(a - seen) : Observation::green();
      I = apply_observation(I, u, a, obs, L);
      p = u;
      t = a;
      out.transcript.push_back({t, p, obs, I});
      continue;
    }
    // Stay at p until the next evader visit any path of I still allows.
    Time next = kNever;
    I.for_each([&](PathIndex q) {
      const Time v = L.visit(p, q);
      if (time_lt(t, v)) next = std::min(next, v);
    });
    if (next == kNever || time_lt(exit_time, next)) return escaped();
    if (time_eq(L.visit(p, k), next)) return captured(p, next, I);
    t = next;
    I = update_green(I, p, t, L);
    out.transcript.push_back({t, p, Observation::green(), I});
  }
  throw Error(ErrorCode::NonTermination,
              "path " + std::to_string(k + 1) + " still in play after " + std::to_string(max_epochs) + " epochs");
}

VerifyReport verify_guarantee(const Scenario& scenario, const SolveResult& policy, Time t0) {
  VerifyReport report;
  report.t0 = t0;
  report.all_captured = true;
  for (PathIndex k = 0; k < scenario.path_count(); ++k) {
    report.outcomes.push_back(simulate(scenario, policy, k, t0));
    report.all_captured = report.all_captured && report.outcomes.back().captured();
  }
  return report;
}

namespace {

// The oracle works on plain tables and bitmasks so that it shares no logic
// with the solver it checks.
class Oracle {
 public:
  Oracle(const Scenario& s, Resolution resolution) : resolution_(resolution) {
    n_ = s.path_count();
    m_ = s.node_count();
    entry_ = s.network.entry();
    visits_.assign(m_, std::vector<double>(n_, kNever));
    for (const auto& p : s.paths) {
      for (std::size_t i = 0; i < p.nodes.size(); ++i) visits_[p.nodes[i]][p.index] = p.arrival[i];
      exit_.push_back(p.arrival.back());
    }
    d_ = s.metric.table();
  }

  bool wins(double t0) {
    memo_.clear();
    const Mask all = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
    return resolution_ == Resolution::Strict ? strict(entry_, t0, all, false) : member(entry_, t0, all);
  }

  double horizon() const { return *std::max_element(exit_.begin(), exit_.end()); }

 private:
  using Mask = std::uint64_t;
  static constexpr double kEps = 1e-9;

  struct Key {
    std::size_t node;
    long long t;
    Mask set;
    bool wait;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<Mask>{}(k.set);
      h = h * 1000003u ^ std::hash<long long>{}(k.t);
      return h * 31u + k.node * 2u + (k.wait ? 1u : 0u);
    }
  };

  bool escapes(double t, Mask S) const {
    for (std::size_t k = 0; k < n_; ++k) {
      if ((S >> k & 1U) && exit_[k] < t - kEps) return true;
    }
    return false;
  }

  template <class F>
  bool memoized(std::size_t p, double t, Mask S, bool wait, F&& compute) {
    const Key key{p, std::llround(t * 1e9), S, wait};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool r = compute();
    memo_[key] = r;
    return r;
  }

  // Physical readings: synchronous arrival captures, red names a delay
  // group, green only says "not yet".
  bool strict(std::size_t p, double t, Mask S, bool must_wait) {
    return memoized(p, t, S, must_wait, [&] {
      if (escapes(t, S)) return false;
      double next = kNever;
      for (std::size_t k = 0; k < n_; ++k) {
        if ((S >> k & 1U) && visits_[p][k] > t + kEps) next = std::min(next, visits_[p][k]);
      }
      if (next != kNever) {
        Mask rest = S;
        for (std::size_t k = 0; k < n_; ++k) {
          if ((S >> k & 1U) && std::abs(visits_[p][k] - next) <= kEps) rest &= ~(Mask{1} << k);
        }
        if (rest == 0 || strict(p, next, rest, false)) return true;
      }
      if (must_wait) return false;
      for (std::size_t u = 0; u < m_; ++u) {
        if (u == p) continue;
        const double a = t + d_[p][u];
        Mask green = 0;
        bool touches = false;
        std::vector<std::pair<double, Mask>> red;
        for (std::size_t k = 0; k < n_; ++k) {
          if (!(S >> k & 1U)) continue;
          const double v = visits_[u][k];
          if (v != kNever) touches = true;
          if (std::abs(v - a) <= kEps) continue;
          if (v > a) {
            green |= Mask{1} << k;
            continue;
          }
          auto it = std::find_if(red.begin(), red.end(),
                                 [&](const auto& g) { return std::abs(g.first - v) <= kEps; });
          if (it == red.end()) {
            red.emplace_back(v, Mask{1} << k);
          } else {
            it->second |= Mask{1} << k;
          }
        }
        if (!touches) continue;
        bool ok = true;
        for (const auto& [v, E] : red) {
          ok = E != S && strict(u, a, E, false);
          if (!ok) break;
        }
        if (ok && green != 0) ok = strict(u, a, green, green == S);
        if (ok) return true;
      }
      return false;
    });
  }

  // Membership readings: visiting u tells I ∩ P_u apart from I \ P_u once
  // the first path of I ∩ P_u is due.
  bool member(std::size_t p, double t, Mask S) {
    return memoized(p, t, S, false, [&] {
      if (escapes(t, S)) return false;
      for (std::size_t u = 0; u < m_; ++u) {
        Mask red = 0;
        double first = kNever;
        for (std::size_t k = 0; k < n_; ++k) {
          if ((S >> k & 1U) && visits_[u][k] != kNever) {
            red |= Mask{1} << k;
            first = std::min(first, visits_[u][k]);
          }
        }
        if (red == 0) continue;
        const double a = t + d_[p][u];
        if (red == S) {
          if (a <= first + kEps) return true;
          continue;
        }
        const double known = std::max(a, first);
        if (member(u, known, red) && member(u, known, S & ~red)) return true;
      }
      return false;
    });
  }

  Resolution resolution_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t entry_ = 0;
  std::vector<std::vector<double>> visits_;
  std::vector<double> exit_;
  std::vector<std::vector<double>> d_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

void check_caps(const Scenario& s, const OracleOptions& o) {
  if (s.path_count() > o.max_paths || s.node_count() > o.max_nodes) {
    throw Error(ErrorCode::CapExceeded, "oracle limited to n <= " + std::to_string(o.max_paths) +
                                            " and m <= " + std::to_string(o.max_nodes) + ", got n=" +
                                            std::to_string(s.path_count()) +
                                            " m=" + std::to_string(s.node_count()));
  }
}

}  // namespace

bool oracle_guarantees(const Scenario& scenario, Time t0, const OracleOptions& options) {
  check_caps(scenario, options);
  return Oracle(scenario, options.resolution).wins(t0);
}

Time oracle_max_delay(const Scenario& scenario, const OracleOptions& options) {
  check_caps(scenario, options);
  Oracle oracle(scenario, options.resolution);
  Time lo = 0.0;
  Time hi = oracle.horizon();
  if (oracle.wins(hi)) return hi;
  while (hi - lo > options.tolerance) {
    const Time mid = 0.5 * (lo + hi);
    if (oracle.wins(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace ugs
