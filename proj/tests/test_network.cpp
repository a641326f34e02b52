#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "support.hpp"
#include "ugs/error.hpp"
#include "ugs/network.hpp"

namespace ugs {
namespace {

using test::fixture_network;

std::vector<int> one_based(const std::vector<NodeIndex>& v) {
  std::vector<int> out;
  for (NodeIndex j : v) out.push_back(static_cast<int>(j + 1));
  return out;
}

NetworkDescription chain(std::vector<NetworkDescription::Edge> edges, int m, int entry = 1) {
  NetworkDescription d;
  for (int i = 1; i <= m; ++i) d.nodes.push_back({i, std::nullopt, std::nullopt});
  d.edges = std::move(edges);
  d.entry = entry;
  return d;
}

void expect_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Network, FixtureIsValidWithThreeExits) {
  const RoadNetwork net = fixture_network();
  EXPECT_EQ(net.node_count(), 7u);
  EXPECT_EQ(one_based(net.goals()), (std::vector<int>{5, 6, 7}));
  EXPECT_TRUE(net.has_coordinates());
}

TEST(Network, SingleEdgeIsValid) {
  const RoadNetwork net = validate_network(chain({{1, 2, 5.0}}, 2));
  EXPECT_EQ(one_based(net.goals()), (std::vector<int>{2}));
  EXPECT_FALSE(net.has_coordinates());
}

TEST(Network, RejectsCycle) {
  expect_code(ErrorCode::CycleDetected, [] { validate_network(chain({{1, 2, 1.0}, {2, 1, 1.0}}, 2)); });
  expect_code(ErrorCode::CycleDetected, [] { validate_network(chain({{1, 1, 1.0}}, 1)); });
}

TEST(Network, RejectsEntryWithoutChildren) {
  expect_code(ErrorCode::EntryIsGoal, [] { validate_network(chain({{2, 1, 1.0}}, 2)); });
}

TEST(Network, RejectsNodeOffEveryEntryGoalPath) {
  expect_code(ErrorCode::UnreachableNode, [] { validate_network(chain({{1, 2, 1.0}, {3, 2, 1.0}}, 3)); });
}

TEST(Network, RejectsNonPositiveEdgeTime) {
  expect_code(ErrorCode::NonPositiveEdgeTime, [] { validate_network(chain({{1, 2, 0.0}}, 2)); });
  expect_code(ErrorCode::NonPositiveEdgeTime, [] { validate_network(chain({{1, 2, -2.0}}, 2)); });
}

TEST(Network, RejectsDeclaredGoalsThatDiffer) {
  NetworkDescription d = paper_fixture();
  d.goals = std::vector<int>{5, 6};
  expect_code(ErrorCode::GoalMismatch, [&] { validate_network(d); });
}

TEST(Network, RejectsBadIds) {
  NetworkDescription d = chain({{1, 2, 1.0}}, 2);
  d.nodes[1].id = 3;
  expect_code(ErrorCode::InvalidInput, [&] { validate_network(d); });
  d.nodes[1].id = 1;
  expect_code(ErrorCode::InvalidInput, [&] { validate_network(d); });
  expect_code(ErrorCode::InvalidInput, [] { validate_network(chain({{1, 4, 1.0}}, 2)); });
  expect_code(ErrorCode::InvalidInput, [] { validate_network(chain({{1, 2, 1.0}, {1, 2, 2.0}}, 2)); });
}

TEST(Paths, FixtureHasFourPathsLeftToRight) {
  const auto paths = enumerate_paths(fixture_network());
  ASSERT_EQ(paths.size(), 4u);
  EXPECT_EQ(one_based(paths[0].nodes), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(one_based(paths[1].nodes), (std::vector<int>{1, 3, 4, 6}));
  EXPECT_EQ(one_based(paths[2].nodes), (std::vector<int>{1, 3, 4, 7}));
  EXPECT_EQ(one_based(paths[3].nodes), (std::vector<int>{1, 2, 7}));
  const double lengths[] = {11.83, 16.30, 17.54, 14.66};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(paths[k].index, k);
    EXPECT_NEAR(paths[k].length(), lengths[k], 1e-9);
  }
}

TEST(Paths, LexicographicOrderIsAvailable) {
  const auto paths = enumerate_paths(fixture_network(), {63, PathOrder::Lexicographic});
  ASSERT_EQ(paths.size(), 4u);
  EXPECT_EQ(one_based(paths[0].nodes), (std::vector<int>{1, 2, 7}));
  EXPECT_EQ(one_based(paths[3].nodes), (std::vector<int>{1, 3, 5}));
}

TEST(Paths, SingleEdgeGivesOnePath) {
  const auto paths = enumerate_paths(validate_network(chain({{1, 2, 5.0}}, 2)));
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_DOUBLE_EQ(paths[0].length(), 5.0);
}

TEST(Paths, CapRaisesPathExplosion) {
  expect_code(ErrorCode::PathExplosion, [] { enumerate_paths(fixture_network(), {3, PathOrder::Auto}); });
  EXPECT_EQ(enumerate_paths(fixture_network(), {4, PathOrder::Auto}).size(), 4u);
}

void check_arrivals(const RoadNetwork& net) {
  for (const auto& p : enumerate_paths(net)) {
    ASSERT_EQ(p.arrival.front(), 0.0);
    Time sum = 0.0;
    for (std::size_t i = 1; i < p.nodes.size(); ++i) {
      sum += net.travel_time(p.nodes[i - 1], p.nodes[i]);
      EXPECT_DOUBLE_EQ(p.arrival[i], sum);
      EXPECT_GT(p.arrival[i], p.arrival[i - 1]);
    }
    std::vector<NodeIndex> sorted = p.nodes;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  }
}

TEST(Paths, ArrivalTimesArePrefixSums) {
  check_arrivals(fixture_network());
  for (std::uint64_t seed = 1; seed <= 30; ++seed) check_arrivals(generate_network(seed).network);
}

TEST(Paths, RandomNetworksEndEveryPathAtAGoal) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const RoadNetwork net = generate_network(seed).network;
    const auto paths = enumerate_paths(net);
    std::vector<bool> used(net.node_count(), false);
    for (const auto& p : paths) {
      EXPECT_TRUE(net.is_goal(p.exit()));
      used[p.exit()] = true;
    }
    for (NodeIndex g : net.goals()) EXPECT_TRUE(used[g]) << "goal " << g + 1 << " ends no path";
  }
}

TEST(Schedule, FixtureRows) {
  const auto paths = enumerate_paths(fixture_network());
  const VisitSchedule L = build_schedule(paths, 7);
  for (PathIndex k = 0; k < 4; ++k) EXPECT_EQ(L.visit(0, k), 0.0);
  EXPECT_EQ(L.visit(1, 0), kNever);
  EXPECT_EQ(L.visit(1, 1), kNever);
  EXPECT_EQ(L.visit(1, 2), kNever);
  EXPECT_NEAR(L.visit(1, 3), 4.83, 1e-9);
  EXPECT_EQ(L.visit(3, 0), kNever);
  EXPECT_NEAR(L.visit(3, 1), 12.06, 1e-9);
  EXPECT_NEAR(L.visit(3, 2), 12.06, 1e-9);
  EXPECT_EQ(L.visit(3, 3), kNever);
  EXPECT_EQ(L.through(6), PathSet::of(4, {2, 3}));
  EXPECT_EQ(L.through(2), PathSet::of(4, {0, 1, 2}));
}

void check_rederive(const RoadNetwork& net) {
  const auto paths = enumerate_paths(net);
  const VisitSchedule L = build_schedule(paths, net.node_count());
  for (const auto& p : paths) {
    std::vector<std::pair<Time, NodeIndex>> seen;
    for (NodeIndex j = 0; j < net.node_count(); ++j) {
      if (L.visit(j, p.index) != kNever) seen.emplace_back(L.visit(j, p.index), j);
    }
    std::sort(seen.begin(), seen.end());
    std::vector<NodeIndex> nodes;
    for (const auto& s : seen) nodes.push_back(s.second);
    EXPECT_EQ(nodes, p.nodes);
  }
  for (NodeIndex j = 0; j < net.node_count(); ++j) EXPECT_FALSE(L.through(j).empty());
}

TEST(Schedule, PathsCanBeRecoveredFromVisitTimes) {
  check_rederive(fixture_network());
  for (std::uint64_t seed = 1; seed <= 30; ++seed) check_rederive(generate_network(seed).network);
}

TEST(Schedule, NodeOnNoPathIsAnOrphan) {
  const auto paths = enumerate_paths(fixture_network());
  expect_code(ErrorCode::OrphanUgs, [&] { build_schedule(paths, 8); });
}

TEST(Metric, EuclideanDistanceOverSpeed) {
  const RoadNetwork net = fixture_network();
  const PursuerMetric d = euclidean_metric(net, 1.62);
  EXPECT_NEAR(d(5, 6), 2.0 / 1.62, 1e-6);
  EXPECT_NEAR(d(5, 6), 1.2346, 1e-4);
  for (NodeIndex j = 0; j < 7; ++j) EXPECT_EQ(d(j, j), 0.0);
}

TEST(Metric, SpeedBelowFloorIsRejected) {
  const RoadNetwork net = fixture_network();
  EXPECT_NEAR(speed_floor(net), 1.0, 1e-12);
  expect_code(ErrorCode::SpeedAdvantageViolated, [&] { euclidean_metric(net, 0.99); });
  expect_code(ErrorCode::SpeedAdvantageViolated, [&] { euclidean_metric(net, 1.0); });
  EXPECT_NO_THROW(euclidean_metric(net, 1.0001));
}

TEST(Metric, DoublingSpeedHalvesEveryEntry) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = generate_network(seed);
    const PursuerMetric a = euclidean_metric(g.network, g.speed);
    const PursuerMetric b = euclidean_metric(g.network, 2.0 * g.speed);
    for (NodeIndex i = 0; i < a.node_count(); ++i) {
      for (NodeIndex j = 0; j < a.node_count(); ++j) {
        EXPECT_NEAR(b(i, j), 0.5 * a(i, j), 1e-12 * std::max(1.0, a(i, j)));
      }
    }
  }
}

TEST(Metric, EuclideanTablesPassValidation) {
  const RoadNetwork net = fixture_network();
  EXPECT_TRUE(validate_metric(euclidean_metric(net, 1.62), net).ok());
  EXPECT_TRUE(validate_metric(PursuerMetric::zero(7), net).ok());
}

TEST(Metric, ReportsTriangleViolationWithIndices) {
  const RoadNetwork net = validate_network(chain({{1, 2, 20.0}, {2, 3, 20.0}}, 3));
  const PursuerMetric d({{0, 1, 10}, {1, 0, 1}, {10, 1, 0}});
  const MetricReport r = validate_metric(d, net);
  ASSERT_FALSE(r.ok());
  const auto& v = r.violations.front();
  EXPECT_EQ(v.kind, MetricViolation::Kind::Triangle);
  EXPECT_EQ(v.i, 0u);
  EXPECT_EQ(v.via, 1u);
  EXPECT_EQ(v.j, 2u);
  expect_code(ErrorCode::TriangleViolation, [&] { r.throw_if_invalid(); });
}

TEST(Metric, ReportsNonZeroDiagonalAndSpeedAdvantage) {
  const RoadNetwork net = validate_network(chain({{1, 2, 2.0}}, 2));
  expect_code(ErrorCode::NonZeroDiagonal,
              [&] { validate_metric(PursuerMetric({{0.5, 1}, {1, 0}}), net).throw_if_invalid(); });
  expect_code(ErrorCode::SpeedAdvantageViolated,
              [&] { validate_metric(PursuerMetric({{0, 2}, {2, 0}}), net).throw_if_invalid(); });
  expect_code(ErrorCode::InvalidInput,
              [&] { validate_metric(PursuerMetric({{0, 1}}), net).throw_if_invalid(); });
}

TEST(Metric, DigestTracksContents) {
  const RoadNetwork net = fixture_network();
  EXPECT_EQ(euclidean_metric(net, 1.62).digest(), euclidean_metric(net, 1.62).digest());
  EXPECT_NE(euclidean_metric(net, 1.62).digest(), euclidean_metric(net, 1.61).digest());
}

}  // namespace
}  // namespace ugs
