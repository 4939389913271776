#include <gtest/gtest.h>

#include <set>

#include "eden/act.hpp"
#include "fixtures.hpp"

using namespace eden;
using namespace eden::test;

namespace {

std::set<std::string> names(ActPreset p) {
  std::set<std::string> out;
  for (const auto& a : actions(p)) out.insert(a.name);
  return out;
}

int index_of(ActPreset p, const std::string& name) {
  const auto& list = actions(p);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].name == name) return static_cast<int>(i);
  }
  ADD_FAILURE() << name;
  return -1;
}

DecodedAction decode_named(const World& w, const std::string& name, ActPreset p = ActPreset::baseline9) {
  return decode(p, index_of(p, name), w);
}

}  // namespace

TEST(Act, PresetCardinalities) {
  EXPECT_EQ(action_count(ActPreset::baseline9), 9);
  EXPECT_EQ(action_count(ActPreset::pig3), 13);
  EXPECT_EQ(action_count(ActPreset::pig5), 17);
  EXPECT_EQ(action_count(ActPreset::expand_consume), 10);
  EXPECT_EQ(action_count(ActPreset::expand_pickup), 11);
  EXPECT_EQ(action_count(ActPreset::expand_collect), 10);
  EXPECT_EQ(action_count(ActPreset::expand_all), 26);
}

TEST(Act, ExpandAllIsTheUnion) {
  std::set<std::string> u;
  for (auto p : {ActPreset::expand_consume, ActPreset::expand_pickup, ActPreset::expand_collect, ActPreset::pig5}) {
    const auto n = names(p);
    u.insert(n.begin(), n.end());
  }
  EXPECT_EQ(names(ActPreset::expand_all), u);
  EXPECT_EQ(names(ActPreset::expand_all).size(), actions(ActPreset::expand_all).size());
}

TEST(Act, NamesUniqueWithinPresets) {
  for (auto p : all_act_presets()) EXPECT_EQ(names(p).size(), actions(p).size()) << to_string(p);
}

TEST(Act, Baseline9Order) {
  const std::vector<std::string> expected{"attack_nearest", "collect_auto",     "pickup_auto",   "consume_auto", "equip_torch",
                                          "synthesize_torch", "discard_torch", "move_to_pig", "idle"};
  std::vector<std::string> got;
  for (const auto& a : actions(ActPreset::baseline9)) got.push_back(a.name);
  EXPECT_EQ(got, expected);
}

TEST(Act, OutOfRangeIndexThrows) {
  const World w = new_world(plain_config(), 0);
  EXPECT_THROW(decode(ActPreset::baseline9, 9, w), std::out_of_range);
  EXPECT_THROW(decode(ActPreset::baseline9, -1, w), std::out_of_range);
}

TEST(Act, AttackNearestInReachIsDirect) {
  const World w = new_world(with_placements(plain_config(), {{"pig", 5, 5}, {"pig", 4, 1}}), 0);
  const auto d = decode_named(w, "attack_nearest");
  EXPECT_EQ(d.note, DecodeNote::direct);
  EXPECT_EQ(d.command, (ActionCommand{ActionId::attack, 5, 5}));
}

TEST(Act, TargetOutOfReachBecomesApproach) {
  const World w = new_world(with_placements(plain_config(), {{"pig", 8, 1}}), 0);
  const auto d = decode_named(w, "attack_nearest");
  EXPECT_EQ(d.note, DecodeNote::approach);
  // dx = 4, dy = -3: cover the distance beyond reach 1, capped at radius 2
  EXPECT_EQ(d.command, (ActionCommand{ActionId::move, 2, -2}));
}

TEST(Act, ApproachStopsShortOfReach) {
  const World w = new_world(with_placements(plain_config(), {{"river", 6, 4}}), 0);
  const auto d = decode_named(w, "collect_auto");
  EXPECT_EQ(d.command, (ActionCommand{ActionId::move, 1, 0}));
}

TEST(Act, ApproachSidestepsOccupiedDestination) {
  const World w = new_world(with_placements(plain_config(), {{"river", 4, 7}, {"tree", 4, 6}}), 0);
  // the river is chosen and its direct approach cell holds the tree
  const auto d = decode_named(w, "collect_auto");
  EXPECT_EQ(d.note, DecodeNote::approach);
  EXPECT_EQ(d.command, (ActionCommand{ActionId::move, 0, 1}));
}

TEST(Act, NoTargetDecodesToIdle) {
  const World w = new_world(plain_config(), 0);
  for (const char* n : {"attack_nearest", "collect_auto", "pickup_auto", "consume_auto", "synthesize_torch"}) {
    const auto d = decode_named(w, n);
    if (std::string(n) == "consume_auto" || std::string(n) == "synthesize_torch") {
      EXPECT_EQ(d.note, DecodeNote::direct) << n;  // item commands decode even when they will fail
      continue;
    }
    EXPECT_EQ(d.note, DecodeNote::untargeted) << n;
    EXPECT_EQ(d.command.id, ActionId::idle) << n;
  }
}

TEST(Act, Pig3MissingRankIsUntargeted) {
  const World w = new_world(with_placements(plain_config(), {{"pig", 5, 5}}), 0);
  EXPECT_EQ(decode_named(w, "attack_pig_1", ActPreset::pig3).note, DecodeNote::direct);
  const auto d = decode_named(w, "attack_pig_2", ActPreset::pig3);
  EXPECT_EQ(d.note, DecodeNote::untargeted);
  EXPECT_EQ(d.command.id, ActionId::idle);
}

TEST(Act, PigRanksFollowDistance) {
  const World w = new_world(with_placements(plain_config(), {{"pig", 8, 8}, {"pig", 5, 4}, {"pig", 2, 4}}), 0);
  EXPECT_EQ(decode_named(w, "attack_pig_1", ActPreset::pig3).command, (ActionCommand{ActionId::attack, 5, 4}));
  EXPECT_EQ(decode_named(w, "move_to_pig_2", ActPreset::pig3).command, (ActionCommand{ActionId::move, -1, 0}));
  EXPECT_EQ(decode_named(w, "move_to_pig_3", ActPreset::pig3).command, (ActionCommand{ActionId::move, 2, 2}));
}

TEST(Act, CollectAutoPrefersScarcerResource) {
  WorldConfig cfg = with_placements(plain_config(), {{"river", 5, 4}, {"tree", 3, 4}});
  cfg.initial_inventory = {{"water", 2}};
  const World w = new_world(cfg, 0);
  EXPECT_EQ(decode_named(w, "collect_auto").command, (ActionCommand{ActionId::collect, 3, 4}));
  cfg.initial_inventory = {{"wood", 2}};
  EXPECT_EQ(decode_named(new_world(cfg, 0), "collect_auto").command, (ActionCommand{ActionId::collect, 5, 4}));
  cfg.initial_inventory.clear();
  EXPECT_EQ(decode_named(new_world(cfg, 0), "collect_auto").command, (ActionCommand{ActionId::collect, 5, 4}));
}

TEST(Act, CollectAutoFallsBackToOtherKind) {
  WorldConfig cfg = with_placements(plain_config(), {{"tree", 3, 4}});
  const World w = new_world(cfg, 0);
  EXPECT_EQ(decode_named(w, "collect_auto").command, (ActionCommand{ActionId::collect, 3, 4}));
}

TEST(Act, PickupAutoTakesScarcestAvailable) {
  WorldConfig cfg = plain_config();
  cfg.initial_inventory = {{"meat", 1}};
  World w = new_world(cfg, 0);
  std::vector<Event> ignored;
  w.drop_items({4, 4}, w.item_id("meat"), 1, 0, ignored);
  w.drop_items({5, 4}, w.item_id("wood"), 2, 0, ignored);
  w.drop_items({3, 3}, w.item_id("wood"), 1, 0, ignored);
  EXPECT_EQ(decode_named(w, "pickup_auto").command, (ActionCommand{ActionId::pick, w.item_id("wood"), 3}));
  EXPECT_EQ(decode_named(w, "pickup_meat", ActPreset::expand_pickup).command,
            (ActionCommand{ActionId::pick, w.item_id("meat"), 1}));
  EXPECT_EQ(decode_named(w, "pickup_water", ActPreset::expand_pickup).command.id, ActionId::idle);
}

TEST(Act, PickupAutoTieBreaksMeatFirst) {
  World w = new_world(plain_config(), 0);
  std::vector<Event> ignored;
  w.drop_items({4, 4}, w.item_id("wood"), 1, 0, ignored);
  w.drop_items({4, 4}, w.item_id("water"), 1, 0, ignored);
  EXPECT_EQ(decode_named(w, "pickup_auto").command.p1, w.item_id("water"));
  w.drop_items({4, 5}, w.item_id("meat"), 1, 0, ignored);
  EXPECT_EQ(decode_named(w, "pickup_auto").command.p1, w.item_id("meat"));
}

TEST(Act, ConsumeAutoFollowsLowerBar) {
  World w = new_world(plain_config(), 0);
  w.mutable_state().agent.satiety = 30;
  EXPECT_EQ(decode_named(w, "consume_auto").command, (ActionCommand{ActionId::consume, w.item_id("meat"), 1}));
  w.mutable_state().agent.thirsty = 20;
  EXPECT_EQ(decode_named(w, "consume_auto").command, (ActionCommand{ActionId::consume, w.item_id("water"), 1}));
}

TEST(Act, TorchActionsFixTheItem) {
  const World w = new_world(plain_config(), 0);
  const int torch = w.item_id("torch");
  EXPECT_EQ(decode_named(w, "equip_torch").command, (ActionCommand{ActionId::equip, torch, 0}));
  EXPECT_EQ(decode_named(w, "synthesize_torch").command, (ActionCommand{ActionId::synthesize, torch, 1}));
  EXPECT_EQ(decode_named(w, "discard_torch").command, (ActionCommand{ActionId::discard, torch, 1}));
}

TEST(Act, MoveToPigExploresWhenNoneVisible) {
  const World w = new_world(plain_config(), 0);
  const auto d = decode_named(w, "move_to_pig");
  EXPECT_EQ(d.note, DecodeNote::untargeted);
  EXPECT_EQ(d.command.id, ActionId::move);
  EXPECT_EQ(std::max(std::abs(d.command.p1), std::abs(d.command.p2)), 2);
  EXPECT_EQ(decode_named(w, "move_to_pig"), d);
}

TEST(Act, CatalogCoversEveryPreset) {
  const auto cat = preset_catalog();
  ASSERT_EQ(cat.size(), all_act_presets().size());
  for (const auto& c : cat) EXPECT_EQ(static_cast<int>(c.names.size()), action_count(c.preset));
  EXPECT_EQ(parse_act_preset("expand_all"), ActPreset::expand_all);
  EXPECT_FALSE(parse_act_preset("expand_none"));
}
