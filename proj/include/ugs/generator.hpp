#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ugs/network.hpp"

namespace ugs {

/// Layered random DAG: one entry in layer 0, goals in the last layer, edges
/// only between consecutive layers. Every node gets a parent and (outside
/// the last layer) a child, so the standing assumptions hold by
/// construction.
struct GeneratorOptions {
  int min_layers = 3;
  int max_layers = 6;
  int min_width = 1;
  int max_width = 3;
  std::size_t max_nodes = 8;
  std::optional<std::size_t> exact_nodes;
  std::size_t min_paths = 2;
  std::size_t max_paths = 4;
  double extra_edge_probability = 0.3;
  /// Edge time = straight-line length times a factor in this range.
  double min_stretch = 1.1;
  double max_stretch = 2.0;
  /// Pursuer speed as a multiple of speed_floor().
  double speed_margin = 1.1;
  int max_attempts = 100000;
};

struct GeneratedInstance {
  RoadNetwork network;
  double speed = 0.0;
  std::uint64_t seed = 0;
};

/// Deterministic in `seed`. Throws InvalidInput when no instance meeting
/// the constraints is found within max_attempts draws.
GeneratedInstance generate_network(std::uint64_t seed, const GeneratorOptions& options = {});

/// Paper's seven-node example with reconstructed coordinates.
NetworkDescription paper_fixture();

}  // namespace ugs
