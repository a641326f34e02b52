#include "ugs/generator.hpp"

#include <random>
#include <set>

#include "ugs/error.hpp"

namespace ugs {

namespace {

std::optional<NetworkDescription> draw(std::mt19937_64& rng, const GeneratorOptions& o) {
  std::uniform_int_distribution<int> layer_count(o.min_layers, o.max_layers);
  std::uniform_int_distribution<int> width(o.min_width, o.max_width);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::uniform_real_distribution<double> height(-4.0, 4.0);
  std::uniform_real_distribution<double> stretch(o.min_stretch, o.max_stretch);
  std::bernoulli_distribution extra(o.extra_edge_probability);

  const int layers = layer_count(rng);
  std::vector<std::vector<int>> ids(static_cast<std::size_t>(layers));
  NetworkDescription d;
  for (int l = 0; l < layers; ++l) {
    const int w = l == 0 ? 1 : width(rng);
    for (int i = 0; i < w; ++i) {
      NetworkDescription::Node n;
      n.id = static_cast<int>(d.nodes.size()) + 1;
      n.x = 3.0 * l + jitter(rng);
      n.y = height(rng);
      d.nodes.push_back(n);
      ids[static_cast<std::size_t>(l)].push_back(n.id);
    }
  }
  const std::size_t m = d.nodes.size();
  if (m > o.max_nodes || (o.exact_nodes && m != *o.exact_nodes)) return std::nullopt;

  auto pick = [&](const std::vector<int>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  std::set<std::pair<int, int>> edges;
  for (std::size_t l = 0; l + 1 < ids.size(); ++l) {
    for (int a : ids[l]) edges.insert({a, pick(ids[l + 1])});
    for (int b : ids[l + 1]) {
      bool has_parent = false;
      for (const auto& e : edges) has_parent = has_parent || e.second == b;
      if (!has_parent) edges.insert({pick(ids[l]), b});
    }
    for (int a : ids[l]) {
      for (int b : ids[l + 1]) {
        if (extra(rng)) edges.insert({a, b});
      }
    }
  }
  for (const auto& [a, b] : edges) {
    const auto& na = d.nodes[static_cast<std::size_t>(a - 1)];
    const auto& nb = d.nodes[static_cast<std::size_t>(b - 1)];
    const double len = distance({*na.x, *na.y}, {*nb.x, *nb.y});
    d.edges.push_back({a, b, len * stretch(rng)});
  }
  d.entry = 1;
  return d;
}

}  // namespace

GeneratedInstance generate_network(std::uint64_t seed, const GeneratorOptions& options) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    auto d = draw(rng, options);
    if (!d) continue;
    try {
      RoadNetwork net = validate_network(*d);
      const auto paths = enumerate_paths(net, {options.max_paths, PathOrder::Lexicographic});
      if (paths.size() < options.min_paths) continue;
      const double speed = speed_floor(net) * options.speed_margin;
      return {std::move(net), speed, seed};
    } catch (const Error&) {
      continue;  // too many paths, or a degenerate zero-length edge
    }
  }
  throw Error(ErrorCode::InvalidInput,
              "no network met the generator constraints after " + std::to_string(options.max_attempts) + " draws");
}

NetworkDescription paper_fixture() {
  NetworkDescription d;
  const double xy[7][2] = {{0, 0}, {2, -4}, {-2, -6}, {0, -10}, {-5, -10}, {-1, -13}, {1, -13}};
  for (int i = 0; i < 7; ++i) d.nodes.push_back({i + 1, xy[i][0], xy[i][1]});
  d.edges = {{1, 2, 4.83}, {1, 3, 6.83}, {3, 5, 5.00}, {3, 4, 5.23},
             {4, 6, 4.24}, {4, 7, 5.48}, {2, 7, 9.83}};
  d.entry = 1;
  d.goals = std::vector<int>{5, 6, 7};
  return d;
}

}  // namespace ugs
