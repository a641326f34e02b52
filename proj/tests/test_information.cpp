#include <gtest/gtest.h>

#include "support.hpp"
#include "ugs/error.hpp"
#include "ugs/information.hpp"

namespace ugs {
namespace {

PathSet S(std::initializer_list<PathIndex> one_based) {
  PathSet s(4);
  for (PathIndex k : one_based) s.insert(k - 1);
  return s;
}

class FixtureInfo : public ::testing::Test {
 protected:
  Scenario sc = test::fixture_zero();
  const VisitSchedule& L = sc.schedule;
};

TEST_F(FixtureInfo, RedNamesThePathsSeen) {
  EXPECT_EQ(update_red(S({1, 2, 3, 4}), 1, 4.83, 0.0, L), S({4}));
  EXPECT_EQ(update_red(S({2, 3}), 5, 16.30, 0.0, L), S({2}));
  EXPECT_EQ(update_red(S({4}), 1, 6.0, 1.17, L), S({4}));
}

TEST_F(FixtureInfo, GreenKeepsPathsStillToCome) {
  EXPECT_EQ(update_green(S({1, 2, 3, 4}), 1, 4.83, L), S({1, 2, 3}));
  EXPECT_EQ(update_green(S({2, 3}), 5, 16.30, L), S({3}));
  EXPECT_EQ(update_green(S({1, 2, 3}), 4, 1.0, L), S({1, 2, 3}));
}

TEST_F(FixtureInfo, ContradictoryReadingsAreRejected) {
  EXPECT_THROW(update_red(S({1}), 1, 4.83, 0.0, L), Error);
  EXPECT_THROW(update_green(S({4}), 1, 5.0, L), Error);
  try {
    update_green(S({4}), 1, 5.0, L);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentObservation);
  }
  EXPECT_THROW(update_red(S({4}), 1, 1.0, 2.0, L), Error);
}

TEST_F(FixtureInfo, ObservationDispatch) {
  EXPECT_EQ(apply_observation(S({1, 2, 3, 4}), 1, 4.83, Observation::green(), L), S({1, 2, 3}));
  EXPECT_EQ(apply_observation(S({1, 2, 3, 4}), 1, 5.83, Observation::red_after(1.0), L), S({4}));
}

TEST_F(FixtureInfo, PartitionByMembership) {
  auto p = partition(S({2, 3}), 5, L);
  EXPECT_EQ(p.red, S({2}));
  EXPECT_EQ(p.green, S({3}));
  p = partition(S({1, 2, 3, 4}), 2, L);
  EXPECT_EQ(p.red, S({1, 2, 3}));
  EXPECT_EQ(p.green, S({4}));
  p = partition(S({4}), 3, L);
  EXPECT_TRUE(p.red.empty());
  EXPECT_EQ(p.green, S({4}));
}

TEST_F(FixtureInfo, VisitGroupsMergeEqualTimes) {
  const auto g = visit_groups(S({1, 2, 3, 4}), 3, L);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_NEAR(g[0].time, 12.06, 1e-9);
  EXPECT_EQ(g[0].members, S({2, 3}));
  const auto h = visit_groups(S({1, 2, 3, 4}), 6, L);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].members, S({4}));
  EXPECT_EQ(h[1].members, S({3}));
}

TEST_F(FixtureInfo, RealizableFamilyHasEightSets) {
  const RealizableFamily f = realizable_sets(L, sc.paths);
  const std::vector<PathSet> expected = {S({1}),       S({2}),       S({3}),          S({4}),
                                         S({2, 3}),    S({1, 2, 3}), S({2, 3, 4}), S({1, 2, 3, 4})};
  EXPECT_EQ(f.sets, expected);
  EXPECT_FALSE(f.contains(S({1, 4})));
}

TEST_F(FixtureInfo, EventLogMatchesTheTable) {
  const RealizableFamily f = realizable_sets(L, sc.paths);
  struct Row {
    int node;
    double time;
    std::vector<PathSet> sets;
  };
  const std::vector<Row> rows = {
      {1, 0.00, {S({1, 2, 3, 4})}},
      {2, 4.83, {S({1, 2, 3, 4}), S({4}), S({1, 2, 3})}},
      {3, 6.83, {S({1, 2, 3, 4}), S({4}), S({1, 2, 3})}},
      {5, 11.83, {S({1, 2, 3, 4}), S({4}), S({1, 2, 3}), S({1}), S({2, 3, 4}), S({2, 3})}},
      {4, 12.06, {S({4}), S({2, 3, 4}), S({2, 3})}},
      {7, 14.66, {S({4}), S({2, 3, 4}), S({2, 3})}},
      {6, 16.30, {S({2, 3}), S({2}), S({3})}},
      {7, 17.54, {S({3})}},
  };
  ASSERT_EQ(f.log.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(static_cast<int>(f.log[i].node + 1), rows[i].node) << "row " << i;
    EXPECT_NEAR(f.log[i].time, rows[i].time, 0.01) << "row " << i;
    EXPECT_EQ(f.log[i].sets, rows[i].sets) << "row " << i;
  }
}

TEST(Realizable, SinglePathFamily) {
  const Scenario sc = make_scenario(test::single_edge(), PursuerMetric::zero(2));
  const RealizableFamily f = realizable_sets(sc.schedule, sc.paths);
  ASSERT_EQ(f.sets.size(), 1u);
  EXPECT_EQ(f.sets[0], PathSet::all(1));
}

void check_family_properties(const Scenario& sc) {
  const std::size_t n = sc.path_count();
  const RealizableFamily f = realizable_sets(sc.schedule, sc.paths);
  EXPECT_TRUE(f.contains(PathSet::all(n)));
  EXPECT_LE(f.sets.size(), (std::size_t{1} << n) - 1);
  for (const auto& s : f.sets) EXPECT_FALSE(s.empty());

  // Every set but the full one arises from splitting a member of the family
  // at some (node, time) event.
  for (const auto& I : f.sets) {
    if (I == PathSet::all(n)) continue;
    bool produced = false;
    for (const auto& parent : f.sets) {
      if (produced || !I.is_subset_of(parent) || I == parent) continue;
      for (NodeIndex j = 0; j < sc.node_count() && !produced; ++j) {
        for (const auto& g : visit_groups(parent, j, sc.schedule)) {
          if (g.members == I || parent - g.members == I) produced = true;
        }
      }
    }
    EXPECT_TRUE(produced) << I.to_string();
  }

  const RealizableFamily reversed = realizable_sets(sc.schedule, sc.paths, TieOrder::NodeDescending);
  EXPECT_EQ(reversed.sets, f.sets);
}

TEST(Realizable, FamilyPropertiesOnFixtureAndRandomNetworks) {
  check_family_properties(test::fixture_zero());
  for (std::uint64_t seed = 1; seed <= 40; ++seed) check_family_properties(test::random_scenario(seed));
}

TEST(Updates, ShrinkAndStayDisjoint) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scenario sc = test::random_scenario(seed);
    const PathSet all = sc.all_paths();
    for (NodeIndex u = 0; u < sc.node_count(); ++u) {
      for (const auto& g : visit_groups(all, u, sc.schedule)) {
        for (Time t : {g.time, g.time + 0.5}) {
          const PathSet red = update_red(all, u, t, t - g.time, sc.schedule);
          EXPECT_TRUE(red.is_subset_of(all));
          PathSet green(all.universe());
          try {
            green = update_green(all, u, t, sc.schedule);
          } catch (const Error&) {
          }
          EXPECT_TRUE(green.is_subset_of(all));
          EXPECT_FALSE(red.intersects(green));
        }
      }
    }
  }
}

}  // namespace
}  // namespace ugs
