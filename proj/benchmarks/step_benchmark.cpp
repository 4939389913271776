#include <benchmark/benchmark.h>

#include "eden/harness.hpp"
#include "eden/rollout.hpp"

namespace {

using namespace eden;

void BM_EngineStep(benchmark::State& state) {
  const WorldConfig cfg = preset("day_and_night");
  World world = new_world(cfg, 1);
  Rng rng(3);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    if (world.state().done) world = new_world(cfg, ++seed);
    auto out = step(world, decode(ActPreset::baseline9, static_cast<int>(rng.below(9)), world).command);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EngineStep);

void BM_EnvStep(benchmark::State& state) {
  const auto obs = static_cast<ObsPreset>(state.range(0));
  auto env = make_env(preset("day_and_night"), {obs, ActPreset::expand_all, RewardVariant::dense});
  Rng rng(5);
  std::uint64_t seed = 0;
  env->reset(seed);
  for (auto _ : state) {
    if (env->done()) env->reset(++seed);
    auto tr = env->step({static_cast<int>(rng.below(static_cast<std::uint64_t>(env->action_count()))), 0, 0});
    benchmark::DoNotOptimize(tr);
  }
  state.SetLabel(std::string(to_string(obs)));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnvStep)
    ->Arg(static_cast<int>(ObsPreset::raw))
    ->Arg(static_cast<int>(ObsPreset::baseline))
    ->Arg(static_cast<int>(ObsPreset::all10));

void BM_WorldGeneration(benchmark::State& state) {
  const WorldConfig cfg = preset("four_season");
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(new_world(cfg, ++seed));
}
BENCHMARK(BM_WorldGeneration);

void BM_ScriptedEpisode(benchmark::State& state) {
  WorldConfig cfg = preset("day_and_night");
  cfg.life_limit = 100;
  std::uint64_t seed = 1000;
  std::int64_t steps = 0;
  for (auto _ : state) {
    const auto rec = run_episode(cfg, seed++, {{}, 1000}, {PolicyKind::scripted_survival, 0});
    steps += rec.summary.lifetime;
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_ScriptedEpisode)->Unit(benchmark::kMillisecond);

void BM_MicroRollouts(benchmark::State& state) {
  const auto factory = config_factory(micro_world_config());
  const TaskSpec task = obtain_task("water");
  RolloutOptions o;
  o.rollouts = 1000;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ttmx_monte_carlo(factory, task, 0.95, o));
  state.SetItemsProcessed(state.iterations() * o.rollouts);
}
BENCHMARK(BM_MicroRollouts)->Unit(benchmark::kMillisecond);

void BM_CdfSeries(benchmark::State& state) {
  const AnalyticParams p = micro_world_params(ActPreset::baseline9, 0.99);
  for (auto _ : state) benchmark::DoNotOptimize(first_completion_cdf_series(p, 1000));
}
BENCHMARK(BM_CdfSeries);

}  // namespace

BENCHMARK_MAIN();
