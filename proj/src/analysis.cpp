#include "ugs/analysis.hpp"

#include <sstream>

#include "ugs/error.hpp"

namespace ugs {

namespace {

std::optional<Scenario> at_speed(const Scenario& base, double speed) {
  try {
    return base.with_metric(euclidean_metric(base.network, speed));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SpeedAdvantageViolated || e.code() == ErrorCode::TriangleViolation) {
      return std::nullopt;
    }
    throw;
  }
}

Scenario base_scenario(const RoadNetwork& network, const PathOptions& paths) {
  return make_scenario(network, PursuerMetric::zero(network.node_count()), paths);
}

}  // namespace

SpeedSweep sweep(const RoadNetwork& network, std::span<const double> speeds,
                 const SolveOptions& options, const PathOptions& paths) {
  const Scenario base = base_scenario(network, paths);
  SpeedSweep rows;
  for (double v : speeds) {
    SweepRow row;
    row.speed = v;
    if (auto s = at_speed(base, v)) {
      const SolveResult r = solve(*s, options);
      row.valid = true;
      row.D = r.root_value();
      row.delay = r.tolerable_delay();
      row.mu = r.root().mu;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const SpeedSweep& rows) {
  std::ostringstream os;
  os.precision(10);
  os << "V,D,delay,mu\n";
  for (const auto& r : rows) {
    os << r.speed << ',';
    if (r.valid) {
      if (r.D != kNoGuarantee) os << r.D;
      os << ',' << r.delay << ',';
      if (r.mu) os << *r.mu + 1;
    } else {
      os << ",,";
    }
    os << '\n';
  }
  return os.str();
}

CriticalSpeed critical_speed(const RoadNetwork& network, double lo, double hi, double tol,
                             const SolveOptions& options, const PathOptions& paths) {
  if (!(lo > 0.0) || !(hi > lo) || !(tol > 0.0)) {
    throw Error(ErrorCode::BracketInvalid, "need 0 < lo < hi and tol > 0");
  }
  const Scenario base = base_scenario(network, paths);
  CriticalSpeed out;
  auto positive = [&](double v) {
    ++out.solves;
    auto s = at_speed(base, v);
    return s && solve(*s, options).root_value() > kTimeEps;
  };
  if (positive(lo)) {
    throw Error(ErrorCode::BracketInvalid, "delay is already positive at the lower speed");
  }
  if (!positive(hi)) {
    throw Error(ErrorCode::BracketInvalid, "delay is not positive at the upper speed");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (positive(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.lo = lo;
  out.hi = hi;
  out.speed = hi;
  return out;
}

}  // namespace ugs
