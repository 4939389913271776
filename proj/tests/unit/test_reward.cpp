#include <gtest/gtest.h>

#include <cmath>

#include "eden/reward.hpp"
#include "fixtures.hpp"

using namespace eden;
using namespace eden::test;

namespace {

Event ev(EventType type, int item = 0, double value = 0) {
  Event e;
  e.type = type;
  e.item = item;
  e.value = value;
  return e;
}

StepOutcome outcome(std::vector<Event> events, ActionResult result = ActionResult::success) {
  StepOutcome o;
  o.events = std::move(events);
  o.result = result;
  return o;
}

const WorldConfig& cfg() {
  static const WorldConfig c = preset("day_and_night");
  return c;
}

}  // namespace

TEST(Reward, VerySparseOnlyAtTheEnd) {
  const auto spec = reward_spec(RewardVariant::very_sparse, cfg());
  EXPECT_EQ(compute_reward(outcome({ev(EventType::kill)}), false, spec), 0);
  EXPECT_EQ(compute_reward(outcome({}), true, spec), -1);
}

TEST(Reward, SparsePaysQualifyingConsumes) {
  const auto spec = reward_spec(RewardVariant::sparse, cfg());
  const int water = cfg().item_index("water") + 1;
  const int meat = cfg().item_index("meat") + 1;
  const int wood = cfg().item_index("wood") + 1;
  EXPECT_EQ(compute_reward(outcome({ev(EventType::consume, water, 0.9)}), false, spec), 1);
  EXPECT_EQ(compute_reward(outcome({ev(EventType::consume, meat, 0.1)}), true, spec), 1);
  EXPECT_EQ(compute_reward(outcome({ev(EventType::pickup, water)}), false, spec), 0);
  EXPECT_EQ(compute_reward(outcome({ev(EventType::consume, wood)}), false, spec), 0);
  EXPECT_EQ(compute_reward(outcome({ev(EventType::death)}), true, spec), 0);
}

TEST(Reward, DenseTableDefaults) {
  const RewardTable t = dense_table();
  EXPECT_EQ(t.kill, 5);
  EXPECT_EQ(t.failed_action, -1);
  EXPECT_EQ(t.per_step, -0.01);
  EXPECT_EQ(t.death, -10);
  EXPECT_EQ(entries(t).size(), 11u);
}

TEST(Reward, DenseSumsEventsOnTopOfStepCost) {
  const auto spec = reward_spec(RewardVariant::dense, cfg());
  EXPECT_DOUBLE_EQ(compute_reward(outcome({}), false, spec), -0.01);
  EXPECT_DOUBLE_EQ(compute_reward(outcome({ev(EventType::attack), ev(EventType::kill), ev(EventType::spawn)}), false, spec),
                   -0.01 + 1 + 5);
  EXPECT_DOUBLE_EQ(compute_reward(outcome({}, ActionResult::failure), false, spec), -1.01);
  EXPECT_DOUBLE_EQ(compute_reward(outcome({ev(EventType::damage), ev(EventType::death)}), true, spec), -10.01);
}

TEST(Reward, ConsumeDependsOnNeed) {
  const auto spec = reward_spec(RewardVariant::dense, cfg());
  EXPECT_DOUBLE_EQ(compute_reward(outcome({ev(EventType::consume, 1, 0.49)}), false, spec), 4.99);
  EXPECT_DOUBLE_EQ(compute_reward(outcome({ev(EventType::consume, 1, 0.5)}), false, spec), -1.01);
}

TEST(Reward, PickupScoresOncePerAction) {
  const auto spec = reward_spec(RewardVariant::dense, cfg());
  EXPECT_DOUBLE_EQ(compute_reward(outcome({ev(EventType::pickup, 1), ev(EventType::pickup, 1)}), false, spec), 0.99);
}

TEST(Reward, DeceptiveRewardsHoarding) {
  const auto spec = reward_spec(RewardVariant::deceptive, cfg());
  EXPECT_DOUBLE_EQ(compute_reward(outcome({ev(EventType::pickup, 1)}), false, spec), 4.99);
  EXPECT_DOUBLE_EQ(compute_reward(outcome({ev(EventType::consume, 1, 0.1)}), false, spec), -0.01);
  RewardTable diff = dense_table();
  diff.consume_needed = 0;
  diff.pickup = 5;
  EXPECT_EQ(deceptive_table(), diff);
}

TEST(Reward, EndToEndConsumeOfWater) {
  WorldConfig c = plain_config();
  c.initial_inventory = {{"water", 1}};
  World w = new_world(c, 0);
  const auto out = step(w, item_cmd(w, ActionId::consume, "water"));
  EXPECT_EQ(compute_reward(out, out.done, reward_spec(RewardVariant::sparse, c)), 1);
  EXPECT_DOUBLE_EQ(compute_reward(out, out.done, reward_spec(RewardVariant::dense, c)), -1.01);
}

TEST(Reward, EpisodeReturn) {
  EXPECT_EQ(episode_return(std::vector<double>{1, 1}, 1), 2);
  EXPECT_EQ(episode_return(std::vector<double>{}, 0.9), 0);
  std::vector<double> r(7, 0.0);
  r.back() = -1;
  EXPECT_NEAR(episode_return(r, 0.9), -std::pow(0.9, 6), 1e-15);
}

TEST(Reward, Names) {
  for (auto v : {RewardVariant::dense, RewardVariant::sparse, RewardVariant::very_sparse, RewardVariant::deceptive}) {
    EXPECT_EQ(parse_reward_variant(to_string(v)), v);
  }
  EXPECT_FALSE(parse_reward_variant("shaped"));
}
