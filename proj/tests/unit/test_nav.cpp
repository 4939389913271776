#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "eden/harness.hpp"
#include "eden/nav.hpp"
#include "eden/rng.hpp"

using namespace eden;

namespace {

const WorldConfig& nav40() {
  static const WorldConfig c = preset("navigation40");
  return c;
}

}  // namespace

TEST(Nav, ResetAtCentreWithRiverGoal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const NavReset r = nav_reset(nav40(), seed);
    EXPECT_EQ(r.obs, (NavObservation{20, 20}));
    const World w = new_world(nav40(), seed);
    const Entity* goal = w.entity_at(r.state.goal);
    ASSERT_NE(goal, nullptr);
    EXPECT_EQ(goal->kind, nav40().creature_index("river"));
    EXPECT_EQ(nav_reset(nav40(), seed).state, r.state);
  }
}

TEST(Nav, GoalsVaryAcrossSeeds) {
  std::set<std::pair<int, int>> goals;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = nav_reset(nav40(), seed).state.goal;
    goals.insert({g.x, g.y});
  }
  EXPECT_GT(goals.size(), 1u);
}

TEST(Nav, OffsetClipping) {
  EXPECT_EQ(clip_offset(3.7, 2), 2);
  EXPECT_EQ(clip_offset(-5, 2), -2);
  EXPECT_EQ(clip_offset(1.9, 2), 1);
  EXPECT_EQ(clip_offset(-1.9, 2), -1);
  EXPECT_EQ(clip_offset(-0.4, 2), 0);
  EXPECT_EQ(clip_offset(std::nan(""), 2), 0);
  NavState s = nav_reset(nav40(), 0).state;
  const NavStep st = nav_step(s, 3.7, -5);
  EXPECT_EQ(st.applied, (std::array<int, 2>{2, -2}));
  EXPECT_EQ(st.obs, (NavObservation{22, 18}));
}

TEST(Nav, RewardIsDistanceDecrease) {
  NavState s;
  s.x = 3;
  s.y = 4;
  s.goal = {0, 0};  // d² = 25
  const NavStep st = nav_step(s, -1, 0);  // d² = 4 + 16 = 20
  EXPECT_EQ(st.reward, 5);
  NavState u;
  u.x = 4;
  u.y = 3;
  u.goal = {0, 0};
  EXPECT_EQ(nav_step(u, -1, -2).reward, 25 - 10);
}

TEST(Nav, HorizonEndsEpisode) {
  NavState s = nav_reset(nav40(), 1).state;
  s.goal = {0, 0};
  for (int t = 1; t < 20; ++t) EXPECT_FALSE(nav_step(s, 0, 0).done);
  EXPECT_TRUE(nav_step(s, 0, 0).done);
  EXPECT_THROW(nav_step(s, 0, 0), ContractViolation);
}

TEST(Nav, ReachingGoalEndsEpisode) {
  NavState s;
  s.x = 10;
  s.y = 10;
  s.goal = {12, 11};
  EXPECT_FALSE(nav_step(s, 1, 0).done);
  EXPECT_TRUE(nav_step(s, 1, 1).done);
  EXPECT_EQ(s.t, 2);
}

TEST(Nav, ClampedAtBorders) {
  NavState s;
  s.x = 1;
  s.y = 39;
  s.goal = {20, 20};
  const NavStep st = nav_step(s, -2, 2);
  EXPECT_EQ(st.obs, (NavObservation{0, 40}));
  EXPECT_EQ(st.applied, (std::array<int, 2>{-2, 2}));
}

TEST(Nav, RewardsTelescopeUnderRandomOffsets) {
  Rng rng(55);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    NavState s = nav_reset(nav40(), seed).state;
    const double start = goal_dist2(s);
    double total = 0;
    while (!s.done) {
      const NavStep st = nav_step(s, rng.uniform() * 8 - 4, rng.uniform() * 8 - 4);
      EXPECT_LE(std::abs(st.applied[0]), 2);
      EXPECT_LE(std::abs(st.applied[1]), 2);
      total += st.reward;
    }
    EXPECT_NEAR(total, start - goal_dist2(s), 1e-9);
  }
}

TEST(Nav, GreedyBaseline) {
  EXPECT_EQ(nav_greedy({20, 20}, {25, 20}), (std::array<double, 2>{2, 0}));
  EXPECT_EQ(nav_greedy({20, 20}, {20, 20}), (std::array<double, 2>{0, 0}));
  EXPECT_EQ(nav_greedy({20, 20}, {19, 15}), (std::array<double, 2>{-1, -2}));
}

TEST(Nav, GreedyReachesNearbyGoals) {
  int reached = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    NavState s = nav_reset(nav40(), seed).state;
    while (!s.done) {
      const auto off = nav_greedy({s.x, s.y}, s.goal, s.max_offset);
      nav_step(s, off[0], off[1]);
    }
    if (goal_dist2(s) == 0) ++reached;
    EXPECT_LE(s.t, 10);
  }
  // every goal lies within 20 cells per axis of the centre
  EXPECT_EQ(reached, 20);
}

TEST(Nav, SurvivalConfigRejected) { EXPECT_THROW(nav_reset(preset("day_and_night"), 0), ContractViolation); }
