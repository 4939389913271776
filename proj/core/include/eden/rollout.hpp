#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eden/act.hpp"
#include "eden/engine.hpp"
#include "eden/metrics.hpp"

namespace eden {

// A monotone completion predicate over a survival episode.
struct TaskSpec {
  std::string id;
  std::function<bool(const World&)> satisfied_at_reset;
  std::function<bool(const World&, const StepOutcome&)> completes;
  int max_horizon = 1000;
};

TaskSpec obtain_task(std::string item);  // a pickup of `item` has happened
TaskSpec craft_task(std::string item);   // a synthesis of `item` has happened
std::vector<std::string> task_names();
TaskSpec named_task(std::string_view id);

// 3x3 world: river fixed at the centre, agent fixed at (0,1), nothing else.
// Without the river the obtain_water task is impossible.
WorldConfig micro_world_config(bool with_river = true);

using WorldFactory = std::function<World(std::uint64_t seed)>;
WorldFactory config_factory(WorldConfig cfg);

// Chooses an action index given the world; rng is private to the episode.
using IndexPolicy = std::function<int(const World&, Rng&)>;
IndexPolicy uniform_policy(ActPreset preset);
IndexPolicy logit_policy(std::vector<double> logits);

struct RolloutOptions {
  int rollouts = 1000;
  int max_t = 1000;
  std::uint64_t base_seed = 0;
  int threads = 0;  // 0 = hardware concurrency
  ActPreset preset = ActPreset::baseline9;
};

// First completion step of one episode, or nullopt when censored.
std::optional<int> first_completion(World world, const TaskSpec& task, ActPreset preset, int max_t,
                                    const IndexPolicy& policy, Rng& rng);

std::uint64_t policy_stream_seed(std::uint64_t episode_seed);

struct MonteCarloResult {
  double threshold = 0;
  int rollouts = 0;
  int max_t = 0;
  std::vector<int> completion_times;  // -1 = not completed by max_t
  std::vector<double> cdf;            // empirical CDF for t = 0..max_t
  int completions = 0;
  std::optional<int> ttmx;
  double dkw_epsilon = 0;  // 95% uniform band half-width
  std::optional<int> ci_low;
  std::optional<int> ci_high;

  bool reachable() const { return ttmx.has_value(); }
};

// Seeds rollout i with base_seed + i; results are merged in index order.
MonteCarloResult ttmx_monte_carlo(const WorldFactory& factory, const TaskSpec& task, double threshold,
                                  const RolloutOptions& options);

// Crossing of an empirical CDF; used for re-thresholding a stored result.
std::optional<int> cdf_crossing(const std::vector<double>& cdf, double threshold);

// Breadth-first search over action-index sequences of length <= bound.
std::optional<int> ttmn_search(const WorldFactory& factory, const TaskSpec& task, ActPreset preset, int bound,
                               std::uint64_t seed = 0);

// Per-stage (p*, p) for the micro-world task obtained by classifying every
// action of the preset from a representative state of each stage.
AnalyticParams micro_world_params(ActPreset preset, double threshold);

struct PicOptions {
  int policies = 16;
  int episodes = 32;
  int bins = 2;
  std::uint64_t base_seed = 0;
  int threads = 0;
  ActPreset preset = ActPreset::baseline9;
};

struct PicResult {
  std::vector<double> pic;  // one per goal
  std::vector<std::vector<int>> completion_times;  // [policy][episode], -1 = censored
};

// Scores each episode 1 if the task completed by the goal's deadline, else 0.
PicResult pic_over_goals(const WorldFactory& factory, const TaskSpec& task, const GoalLadder& ladder,
                         const PicOptions& options);

}  // namespace eden
