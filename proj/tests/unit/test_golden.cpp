#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "eden/digest.hpp"
#include "eden/harness.hpp"
#include "eden/rollout.hpp"

using namespace eden;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  EXPECT_TRUE(in) << p;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json golden(const char* name) { return json::parse(slurp(std::filesystem::path(EDEN_GOLDEN_DIR) / name)); }

}  // namespace

TEST(Golden, ShippedConfigsMatchPresets) {
  for (const char* name : {"day_and_night", "four_season", "navigation40"}) {
    const auto path = std::filesystem::path(EDEN_CONFIG_DIR) / (std::string(name) + ".json");
    const WorldConfig cfg = parse_config(slurp(path));
    EXPECT_EQ(config_digest(cfg), config_digest(preset(name))) << name;
  }
}

TEST(Golden, RecordedLogReplays) {
  std::ifstream in(std::filesystem::path(EDEN_GOLDEN_DIR) / "random_seed7.jsonl");
  const auto records = read_jsonl(in);
  ASSERT_EQ(records.size(), 1u);
  WorldConfig cfg = preset("day_and_night");
  cfg.life_limit = 60;
  EXPECT_TRUE(replay(cfg, records[0]).ok);
  const auto fresh = run_episode(cfg, 7, {records[0].bundle, records[0].max_steps}, records[0].policy);
  EXPECT_EQ(fresh, records[0]);
}

TEST(Golden, ScriptedSurvivalLifetimes) {
  const json g = golden("scripted_survival_L100.json");
  WorldConfig cfg = preset("day_and_night");
  cfg.life_limit = 100;
  std::vector<std::uint64_t> seeds;
  for (const auto& e : g["episodes"]) seeds.push_back(e["seed"].get<std::uint64_t>());
  const auto batch = run_batch(cfg, seeds, {{}, 1000}, {PolicyKind::scripted_survival, 0});
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    EXPECT_EQ(batch.records[i].summary.lifetime, g["episodes"][i]["lifetime"].get<std::int64_t>()) << seeds[i];
  }
  EXPECT_EQ(batch.lifetime.median, g["lifetime"]["median"].get<double>());
}

TEST(Golden, MonteCarloTtmxTable) {
  const json g = golden("ttmx_micro.json");
  const json report = golden("ttmx_micro_report.json");
  RolloutOptions o;
  o.rollouts = g["rollouts"].get<int>();
  o.max_t = g["max_t"].get<int>();
  o.base_seed = g["base_seed"].get<std::uint64_t>();
  const auto mc = ttmx_monte_carlo(config_factory(micro_world_config()), obtain_task("water"), 0.95, o);
  EXPECT_EQ(mc.completions, g["completions"].get<int>());
  EXPECT_EQ(mc.cdf, report["cdf"].get<std::vector<double>>());
  for (const auto& row : g["rows"]) {
    const double th = row["threshold"].get<double>();
    EXPECT_EQ(cdf_crossing(mc.cdf, th), row["mc_ttmx"].get<int>()) << th;
    EXPECT_EQ(cdf_crossing(mc.cdf, th - mc.dkw_epsilon), row["ci_low"].get<int>()) << th;
    EXPECT_EQ(cdf_crossing(mc.cdf, th + mc.dkw_epsilon), row["ci_high"].get<int>()) << th;
    EXPECT_EQ(ttmx_analytic(micro_world_params(ActPreset::baseline9, th)), row["ttmx_hat"].get<int>()) << th;
  }
}

TEST(Golden, PicTable) {
  const json g = golden("pic_micro.json");
  const GoalLadder ladder =
      goal_ladder(g["mc_ttmn"].get<int>(), g["mc_ttmx"].get<int>(), static_cast<int>(g["goals"].size()));
  EXPECT_EQ(ladder.breakpoints, g["breakpoints"].get<std::vector<int>>());
  PicOptions o;
  o.policies = g["policies"].get<int>();
  o.episodes = g["episodes"].get<int>();
  o.bins = g["bins"].get<int>();
  o.base_seed = g["base_seed"].get<std::uint64_t>();
  const PicResult r = pic_over_goals(config_factory(micro_world_config()), obtain_task("water"), ladder, o);
  ASSERT_EQ(r.pic.size(), g["goals"].size());
  for (std::size_t i = 0; i < r.pic.size(); ++i) {
    EXPECT_EQ(ladder.goals[i].deadline, g["goals"][i]["deadline"].get<int>());
    EXPECT_DOUBLE_EQ(r.pic[i], g["goals"][i]["pic"].get<double>());
  }
}
