// One PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eden/harness.hpp"
#include "eden/metrics.hpp"
#include "eden/rollout.hpp"

using namespace eden;

namespace {

constexpr double kIdleBudgetS = 5;
constexpr double kDeterminismBudgetS = 30;
constexpr double kRewardBudgetS = 120;
constexpr double kNavBudgetS = 30;
constexpr double kTtmxBudgetS = 120;
constexpr double kPicBudgetS = 60;
constexpr double kSurvivalBudgetS = 120;

constexpr double kNavTolerance = 1e-9;
constexpr int kTtmxAbsTolerance = 2;
constexpr double kTtmxRelTolerance = 0.20;
constexpr int kTtmxRollouts = 100'000;
constexpr double kPicIdenticalTolerance = 1e-12;
constexpr double kPicDisjointTolerance = 1e-9;
constexpr double kSurvivalFactor = 3.0;
constexpr double kMinStepsPerSecond = 10'000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    out.pass = false;
    out.detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + " s budget)";
  }
  if (!out.pass) ++failures;
  std::printf("%s %-22s %8.2fs  %s\n", out.pass ? "PASS" : "FAIL", name, secs, out.detail.c_str());
  std::fflush(stdout);
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, int n) {
  std::vector<std::uint64_t> s;
  for (int i = 0; i < n; ++i) s.push_back(first + static_cast<std::uint64_t>(i));
  return s;
}

Outcome idle_lifetime() {
  int episodes = 0;
  for (int limit : {50, 100, 150, 300}) {
    WorldConfig cfg = preset("day_and_night");
    cfg.life_limit = limit;
    const auto batch = run_batch(cfg, seed_range(1, 20), {}, {PolicyKind::idle, 0});
    for (const auto& r : batch.records) {
      ++episodes;
      if (r.summary.lifetime != limit) {
        return {false, "L=" + std::to_string(limit) + " seed " + std::to_string(r.seed) + " lived " +
                           std::to_string(r.summary.lifetime)};
      }
    }
  }
  return {true, std::to_string(episodes) + " episodes exact"};
}

Outcome determinism() {
  const std::vector<const char*> configs{"day_and_night", "four_season", "navigation40"};
  const std::vector<ObsPreset> obs{ObsPreset::baseline, ObsPreset::pigs10, ObsPreset::all10, ObsPreset::raw};
  const auto acts = all_act_presets();
  const std::vector<RewardVariant> rewards{RewardVariant::dense, RewardVariant::sparse, RewardVariant::very_sparse,
                                           RewardVariant::deceptive};
  std::stringstream log;
  std::vector<WorldConfig> used;
  long steps = 0;
  for (int i = 0; i < 100; ++i) {
    WorldConfig cfg = preset(configs[static_cast<std::size_t>(i) % configs.size()]);
    if (cfg.kind == WorldKind::survival) cfg.life_limit = 200;
    const Bundle bundle = cfg.kind == WorldKind::navigation
                              ? native_bundle()
                              : Bundle{obs[static_cast<std::size_t>(i) % obs.size()], acts[static_cast<std::size_t>(i) % acts.size()],
                                       rewards[static_cast<std::size_t>(i / 3) % rewards.size()]};
    const auto rec = run_episode(cfg, 500 + static_cast<std::uint64_t>(i), {bundle, std::nullopt},
                                 {PolicyKind::random, static_cast<std::uint64_t>(i)});
    steps += rec.summary.lifetime;
    write_jsonl(rec, log);
    used.push_back(cfg);
  }
  const auto records = read_jsonl(log);
  if (records.size() != used.size()) return {false, "log holds " + std::to_string(records.size()) + " episodes"};
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto rep = replay(used[i], records[i]);
    if (!rep.ok) return {false, "episode " + std::to_string(i) + " step " + std::to_string(rep.mismatched_step) + ": " + rep.detail};
  }
  return {true, "100 episodes, " + std::to_string(steps) + " steps replayed bit-exactly"};
}

Outcome reward_semantics() {
  const WorldConfig cfg = preset("day_and_night");
  const int meat = cfg.item_index("meat") + 1;
  const int water = cfg.item_index("water") + 1;
  long violations = 0, steps = 0, sparse_paid = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    const RewardVariant variant = i % 2 ? RewardVariant::sparse : RewardVariant::very_sparse;
    const auto act = i % 4 < 2 ? ActPreset::baseline9 : ActPreset::expand_all;
    auto env = make_env(cfg, {ObsPreset::baseline, act, variant});
    auto policy = make_policy({PolicyKind::random, static_cast<std::uint64_t>(i)}, *env);
    const std::uint64_t seed = 10'000 + static_cast<std::uint64_t>(i);
    auto obs = env->reset(seed);
    policy->begin_episode(seed);
    double total = 0;
    while (!env->done()) {
      const Transition tr = env->step(policy->act(*env, obs));
      ++steps;
      total += tr.reward;
      bool ok = true;
      if (variant == RewardVariant::very_sparse) {
        ok = tr.done ? tr.reward == -1 : tr.reward == 0;
      } else {
        const bool qualifying = std::any_of(tr.events.begin(), tr.events.end(), [&](const Event& e) {
          return e.type == EventType::consume && (e.item == meat || e.item == water);
        });
        ok = qualifying ? tr.reward == 1 : tr.reward == 0;
        sparse_paid += qualifying;
      }
      if (!ok && violations++ == 0) first = "episode " + std::to_string(i) + " reward " + std::to_string(tr.reward);
      obs = tr.obs;
    }
    if (variant == RewardVariant::very_sparse && total != -1 && violations++ == 0) {
      first = "episode " + std::to_string(i) + " total " + std::to_string(total);
    }
  }
  if (violations) return {false, std::to_string(violations) + " violations; first: " + first};
  return {true, "1000 episodes, " + std::to_string(steps) + " steps, " + std::to_string(sparse_paid) + " sparse payouts"};
}

Outcome nav_telescoping() {
  const WorldConfig cfg = preset("navigation40");
  Rng rng(4242);
  double worst = 0;
  int reached = 0;
  for (int i = 0; i < 500; ++i) {
    NavState s = nav_reset(cfg, static_cast<std::uint64_t>(i)).state;
    const double start = goal_dist2(s);
    double total = 0;
    int t = 0;
    while (!s.done) {
      const NavStep st = nav_step(s, rng.uniform() * 10 - 5, rng.uniform() * 10 - 5);
      ++t;
      for (int a : st.applied) {
        if (a < -2 || a > 2) return {false, "offset " + std::to_string(a) + " outside [-2, 2]"};
      }
      total += st.reward;
    }
    const bool goal = std::sqrt(goal_dist2(s)) < s.tolerance;
    reached += goal;
    if (t > 20 || (!goal && t != 20)) return {false, "episode " + std::to_string(i) + " ended at t=" + std::to_string(t)};
    worst = std::max(worst, std::abs(total - (start - goal_dist2(s))));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "500 episodes, max |error| %.3g, %d hit the goal", worst, reached);
  return {worst <= kNavTolerance, buf};
}

Outcome ttmx_vs_oracle() {
  const auto factory = config_factory(micro_world_config());
  const TaskSpec task = obtain_task("water");
  RolloutOptions o;
  o.rollouts = kTtmxRollouts;
  o.max_t = 1000;
  const auto mc = ttmx_monte_carlo(factory, task, 0.9, o);
  const auto ttmn = ttmn_search(factory, task, ActPreset::baseline9, 3);
  if (!ttmn) return {false, "ttmn_search found no sequence"};
  std::string detail = "ttmn " + std::to_string(*ttmn);
  bool pass = true;
  int prev_a = 0, prev_m = 0;
  for (double th : {0.9, 0.95, 0.99}) {
    const int analytic = ttmx_analytic(micro_world_params(ActPreset::baseline9, th));
    const auto m = cdf_crossing(mc.cdf, th);
    if (!m) return {false, "oracle did not reach th"};
    const double tol = std::max<double>(kTtmxAbsTolerance, kTtmxRelTolerance * *m);
    pass = pass && std::abs(analytic - *m) <= tol && *ttmn <= analytic && *ttmn <= *m && analytic >= prev_a && *m >= prev_m;
    prev_a = analytic;
    prev_m = *m;
    char buf[64];
    std::snprintf(buf, sizeof buf, "; th %.2f analytic %d mc %d", th, analytic, *m);
    detail += buf;
  }
  return {pass, detail};
}

Outcome pic_properties() {
  Rng rng(11);
  double worst_identical = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> base;
    const int m = 1 + static_cast<int>(rng.below(20));
    for (int k = 0; k < m; ++k) base.push_back(rng.normal());
    std::vector<std::vector<double>> samples;
    const int n = 2 + static_cast<int>(rng.below(6));
    for (int i = 0; i < n; ++i) {
      auto copy = base;
      std::rotate(copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(rng.below(copy.size())), copy.end());
      samples.push_back(copy);
    }
    worst_identical = std::max(worst_identical, pic_estimate(samples, 2 + static_cast<int>(rng.below(9))));
  }
  const double disjoint = pic_estimate({std::vector<double>(16, 0.0), std::vector<double>(16, 1.0)}, 2);
  int out_of_range = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const int bins = 2 + static_cast<int>(rng.below(15));
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(n));
    for (auto& s : samples) {
      const int m = 1 + static_cast<int>(rng.below(40));
      const double shift = rng.normal() * 3;
      for (int k = 0; k < m; ++k) s.push_back(rng.uniform() < 0.5 ? std::round(rng.normal() + shift) : rng.normal() + shift);
    }
    const double pic = pic_estimate(samples, bins);
    if (pic < 0 || pic > std::log(static_cast<double>(bins))) ++out_of_range;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "identical max %.3g, disjoint error %.3g, %d/1000 out of [0, ln B]", worst_identical,
                std::abs(disjoint - std::log(2.0)), out_of_range);
  return {worst_identical <= kPicIdenticalTolerance && std::abs(disjoint - std::log(2.0)) <= kPicDisjointTolerance &&
              out_of_range == 0,
          buf};
}

Outcome survivability() {
  WorldConfig cfg = preset("day_and_night");
  cfg.life_limit = 100;
  const auto batch = run_batch(cfg, seed_range(1000, 20), {{}, 1000}, {PolicyKind::scripted_survival, 0});
  const double target = kSurvivalFactor * cfg.life_limit;
  char buf[96];
  std::snprintf(buf, sizeof buf, "median %.1f (min %.0f, max %.0f), target %.0f", batch.lifetime.median, batch.lifetime.min,
                batch.lifetime.max, target);
  return {batch.lifetime.median >= target, buf};
}

Outcome throughput() {
  const WorldConfig cfg = preset("day_and_night");
  World world = new_world(cfg, 1);
  Rng rng(3);
  long steps = 0;
  std::uint64_t seed = 1;
  const auto t0 = Clock::now();
  double secs = 0;
  while (secs < 2.0) {
    for (int i = 0; i < 1000; ++i) {
      if (world.state().done) world = new_world(cfg, ++seed);
      step(world, decode(ActPreset::baseline9, static_cast<int>(rng.below(9)), world).command);
      ++steps;
    }
    secs = std::chrono::duration<double>(Clock::now() - t0).count();
  }
  const double rate = steps / secs;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.0f engine steps/s (target %.0f)", rate, kMinStepsPerSecond);
  return {rate >= kMinStepsPerSecond, buf};
}

}  // namespace

int main() {
  criterion("idle_lifetime", kIdleBudgetS, idle_lifetime);
  criterion("determinism", kDeterminismBudgetS, determinism);
  criterion("observation_constants", 1, [] {
    const bool ok = dimension(preset("day_and_night"), ObsPreset::baseline) == 78 &&
                    dimension(preset("day_and_night"), ObsPreset::pigs10) == 105 &&
                    dimension(preset("day_and_night"), ObsPreset::all10) == 195 &&
                    dimension(preset("navigation40"), ObsPreset::native) == 2 &&
                    nav_reset(preset("navigation40"), 0).obs.size() == 2;
    return Outcome{ok, "78 / 105 / 195 / 2"};
  });
  criterion("action_constants", 1, [] {
    std::vector<std::string> all, uni;
    for (const auto& a : actions(ActPreset::expand_all)) all.push_back(a.name);
    for (auto p : {ActPreset::expand_consume, ActPreset::expand_pickup, ActPreset::expand_collect, ActPreset::pig5}) {
      for (const auto& a : actions(p)) uni.push_back(a.name);
    }
    std::sort(all.begin(), all.end());
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    const bool ok = action_count(ActPreset::baseline9) == 9 && all == uni;
    return Outcome{ok, "baseline9 " + std::to_string(action_count(ActPreset::baseline9)) + ", expand_all " +
                           std::to_string(all.size()) + " = union " + std::to_string(uni.size())};
  });
  criterion("reward_semantics", kRewardBudgetS, reward_semantics);
  criterion("nav_telescoping", kNavBudgetS, nav_telescoping);
  criterion("ttmx_vs_oracle", kTtmxBudgetS, ttmx_vs_oracle);
  criterion("pic_properties", kPicBudgetS, pic_properties);
  criterion("survivability", kSurvivalBudgetS, survivability);
  criterion("throughput", 0, throughput);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
