#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ugs/generator.hpp"
#include "ugs/network.hpp"

namespace ugs::test {

inline std::string data_path(const std::string& name) { return std::string(UGS_DATA_DIR) + "/" + name; }

inline RoadNetwork fixture_network() { return validate_network(paper_fixture()); }

inline Scenario fixture_at(double speed) {
  RoadNetwork net = fixture_network();
  PursuerMetric metric = euclidean_metric(net, speed);
  return make_scenario(std::move(net), std::move(metric));
}

inline Scenario fixture_zero() {
  RoadNetwork net = fixture_network();
  return make_scenario(net, PursuerMetric::zero(net.node_count()));
}

inline RoadNetwork single_edge(double length = 5.0, double dx = 3.0) {
  NetworkDescription d;
  d.nodes = {{1, 0.0, 0.0}, {2, dx, 0.0}};
  d.edges = {{1, 2, length}};
  d.entry = 1;
  return validate_network(d);
}

/// Speed multiplier cycles through 1, 1, 2, 4 times the generator's speed.
inline double speed_multiplier(std::uint64_t seed) {
  static const double m[] = {1.0, 1.0, 2.0, 4.0};
  return m[seed % 4];
}

inline Scenario random_scenario(std::uint64_t seed) {
  GeneratedInstance g = generate_network(seed);
  PursuerMetric metric = euclidean_metric(g.network, g.speed * speed_multiplier(seed));
  return make_scenario(std::move(g.network), std::move(metric));
}

/// Latest departure from j that still reaches some node of path k no later
/// than the evader does: max over positions of arrival(i) - d(j, node(i)).
inline Time best_intercept_along_path(const Scenario& s, NodeIndex j, PathIndex k) {
  const EvaderPath& p = s.paths[k];
  Time best = kNoGuarantee;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) best = std::max(best, p.arrival[i] - s.metric(j, p.nodes[i]));
  return best;
}

}  // namespace ugs::test
