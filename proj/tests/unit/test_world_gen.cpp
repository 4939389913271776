#include <gtest/gtest.h>

#include "eden/engine.hpp"
#include "fixtures.hpp"

using namespace eden;
using eden::test::plain_config;
using eden::test::with_placements;

TEST(WorldGen, SameSeedSameWorld) {
  const WorldConfig cfg = preset("day_and_night");
  for (std::uint64_t seed : {0ULL, 5ULL, 123456789ULL}) {
    EXPECT_EQ(new_world(cfg, seed).state(), new_world(cfg, seed).state());
  }
}

TEST(WorldGen, DifferentSeedsDifferentMaps) {
  const WorldConfig cfg = preset("day_and_night");
  EXPECT_NE(new_world(cfg, 1).state().geography, new_world(cfg, 2).state().geography);
}

TEST(WorldGen, FixedMapSeedDecouplesMapFromEpisodeSeed) {
  WorldConfig cfg = preset("day_and_night");
  cfg.seed_policy = {SeedPolicy::Mode::fixed, 77};
  const World a = new_world(cfg, 1);
  const World b = new_world(cfg, 2);
  EXPECT_EQ(a.state().geography, b.state().geography);
  EXPECT_EQ(a.state().entities, b.state().entities);
  EXPECT_NE(a.state().rng, b.state().rng);
}

TEST(WorldGen, InitialAgentState) {
  const WorldConfig cfg = preset("day_and_night");
  const World w = new_world(cfg, 3);
  const auto& a = w.state().agent;
  EXPECT_EQ(a.satiety, 100);
  EXPECT_EQ(a.thirsty, 100);
  EXPECT_EQ(a.hp, 100);
  EXPECT_EQ(a.attack, 10);
  EXPECT_EQ(w.state().clock, 0);
  EXPECT_EQ(w.state().phase, Phase::day);
  EXPECT_EQ(w.state().season, Season::none);
  EXPECT_EQ(w.entity_at(a.pos), nullptr);
  EXPECT_TRUE(w.in_map(a.pos));
}

TEST(WorldGen, OccupancyMatchesEntities) {
  const World w = new_world(preset("four_season"), 9);
  int occupied = 0;
  for (EntityId id : w.state().occupancy) occupied += id != 0;
  EXPECT_EQ(occupied, static_cast<int>(w.state().entities.size()));
  for (const auto& e : w.state().entities) {
    ASSERT_EQ(w.entity_at(e.pos), &e);
  }
  for (std::size_t i = 1; i < w.state().entities.size(); ++i) {
    ASSERT_LT(w.state().entities[i - 1].id, w.state().entities[i].id);
  }
}

TEST(WorldGen, RequiredKindsPresentAcrossSeeds) {
  const WorldConfig cfg = preset("day_and_night");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const World w = new_world(cfg, seed);
    bool river = false, pig = false;
    for (const auto& e : w.state().entities) {
      river = river || e.kind == cfg.creature_index("river");
      pig = pig || e.kind == cfg.creature_index("pig");
    }
    EXPECT_TRUE(river && pig) << seed;
  }
}

TEST(WorldGen, MissingRequiredKindThrows) {
  WorldConfig cfg = plain_config();
  cfg.terrain_spec.require = {"river"};
  EXPECT_THROW(new_world(cfg, 0), GenerationError);
}

TEST(WorldGen, PlacementsAndAgentCellClearing) {
  WorldConfig cfg = with_placements(plain_config(), {{"tree", 4, 4}, {"pig", 1, 1}});
  const World w = new_world(cfg, 0);
  EXPECT_EQ(w.entity_at({4, 4}), nullptr);
  ASSERT_NE(w.entity_at({1, 1}), nullptr);
  EXPECT_EQ(w.entity_at({1, 1})->kind, cfg.creature_index("pig"));
  EXPECT_EQ(w.state().entities.size(), 1u);
}

TEST(WorldGen, CollidingPlacementsThrow) {
  WorldConfig cfg = with_placements(plain_config(), {{"tree", 1, 1}, {"pig", 1, 1}});
  EXPECT_THROW(new_world(cfg, 0), GenerationError);
}

TEST(WorldGen, InvalidConfigThrows) {
  WorldConfig cfg = plain_config();
  cfg.life_limit = 0;
  EXPECT_THROW(new_world(cfg, 0), ConfigError);
}

TEST(WorldGen, InitialInventoryLandsInBackpack) {
  WorldConfig cfg = plain_config();
  cfg.initial_inventory = {{"water", 3}, {"torch", 2}};
  const World w = new_world(cfg, 0);
  EXPECT_EQ(w.backpack_count(w.item_id("water")), 3);
  EXPECT_EQ(w.backpack_count(w.item_id("torch")), 2);
}

TEST(WorldGen, CenterSpawn) {
  WorldConfig cfg = plain_config(9);
  cfg.agent_spawn = {AgentSpawn::Mode::center, 0, 0};
  EXPECT_EQ(new_world(cfg, 0).state().agent.pos, (Position{4, 4}));
}

TEST(WorldGen, PhaseAndSeasonSchedule) {
  WorldConfig cfg = preset("four_season");
  EXPECT_EQ(phase_at(cfg, 0), Phase::day);
  EXPECT_EQ(phase_at(cfg, 119), Phase::day);
  EXPECT_EQ(phase_at(cfg, 120), Phase::night);
  EXPECT_EQ(phase_at(cfg, 179), Phase::night);
  EXPECT_EQ(phase_at(cfg, 180), Phase::day);
  EXPECT_EQ(season_at(cfg, 0), Season::spring);
  EXPECT_EQ(season_at(cfg, 300), Season::summer);
  EXPECT_EQ(season_at(cfg, 600), Season::autumn);
  EXPECT_EQ(season_at(cfg, 900), Season::winter);
  EXPECT_EQ(season_at(cfg, 1200), Season::spring);
  cfg.night_length = 0;
  EXPECT_EQ(phase_at(cfg, 150), Phase::day);
  EXPECT_EQ(season_at(preset("day_and_night"), 5000), Season::none);
}

TEST(WorldGen, WeatherClearWithoutSeasonsAndStableWithin) {
  const World dn = new_world(preset("day_and_night"), 4);
  for (int x = 0; x < 64; x += 7) EXPECT_EQ(dn.weather_at({x, x}), Weather::clear);
  World fs = new_world(preset("four_season"), 4);
  fs.mutable_state().season = Season::winter;
  fs.mutable_state().clock = 900;
  int snowy = 0;
  for (int ry = 0; ry < 8; ++ry) {
    for (int rx = 0; rx < 8; ++rx) {
      const Weather w = fs.weather_at({rx * 8, ry * 8});
      EXPECT_NE(w, Weather::rain);  // winter rain probability is 0
      EXPECT_EQ(fs.weather_at({rx * 8 + 7, ry * 8 + 7}), w);
      snowy += w == Weather::snow;
    }
  }
  EXPECT_GT(snowy, 10);
  EXPECT_LT(snowy, 54);
}
