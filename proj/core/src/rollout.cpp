#include "eden/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <thread>

namespace eden {

namespace {

constexpr std::uint64_t kPolicyStream = 0x706f6c6963790000ULL;  // "policy"
constexpr std::uint64_t kPriorStream = 0x7072696f72000000ULL;   // "prior"

int resolve_threads(int requested, std::size_t work) {
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  t = std::max(1, t);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(t), std::max<std::size_t>(work, 1)));
}

// Runs fn(i) for i in [0, n) over strided workers. Each index writes only its
// own output slot, so the result does not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const int workers = resolve_threads(threads, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < n; i += static_cast<std::size_t>(workers)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool has_item_event(const StepOutcome& out, EventType type, int item) {
  return std::any_of(out.events.begin(), out.events.end(),
                     [&](const Event& e) { return e.type == type && e.item == item; });
}

}  // namespace

TaskSpec obtain_task(std::string item) {
  TaskSpec t;
  t.id = "obtain_" + item;
  t.satisfied_at_reset = [item](const World& w) {
    const int id = w.item_id(item);
    return id > 0 && w.backpack_count(id) > 0;
  };
  t.completes = [item](const World& w, const StepOutcome& out) {
    const int id = w.item_id(item);
    return id > 0 && has_item_event(out, EventType::pickup, id);
  };
  return t;
}

TaskSpec craft_task(std::string item) {
  TaskSpec t;
  t.id = "craft_" + item;
  t.satisfied_at_reset = [](const World&) { return false; };
  t.completes = [item](const World& w, const StepOutcome& out) {
    const int id = w.item_id(item);
    return id > 0 && has_item_event(out, EventType::synthesize, id);
  };
  return t;
}

std::vector<std::string> task_names() { return {"obtain_water", "obtain_meat", "obtain_wood", "craft_torch"}; }

TaskSpec named_task(std::string_view id) {
  if (id == "obtain_water") return obtain_task("water");
  if (id == "obtain_meat") return obtain_task("meat");
  if (id == "obtain_wood") return obtain_task("wood");
  if (id == "craft_torch") return craft_task("torch");
  throw std::invalid_argument("unknown task \"" + std::string(id) + "\"");
}

WorldConfig micro_world_config(bool with_river) {
  WorldConfig cfg = preset("day_and_night");
  cfg.name = with_river ? "micro_obtain_water" : "micro_no_river";
  cfg.map_width = 3;
  cfg.map_height = 3;
  cfg.life_limit = 1000;
  cfg.terrain_spec.geographies = {Geography{"plain", 1.0, {}}};
  cfg.terrain_spec.placements.clear();
  if (with_river) cfg.terrain_spec.placements.push_back({"river", 1, 1});
  cfg.terrain_spec.require.clear();
  cfg.agent_spawn = {AgentSpawn::Mode::fixed, 0, 1};
  return cfg;
}

WorldFactory config_factory(WorldConfig cfg) {
  return [cfg = std::move(cfg)](std::uint64_t seed) { return new_world(cfg, seed); };
}

IndexPolicy uniform_policy(ActPreset preset) {
  const auto n = static_cast<std::uint64_t>(action_count(preset));
  return [n](const World&, Rng& rng) { return static_cast<int>(rng.below(n)); };
}

IndexPolicy logit_policy(std::vector<double> logits) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> cumulative;
  double total = 0;
  for (double l : logits) {
    total += std::exp(l - peak);
    cumulative.push_back(total);
  }
  for (double& c : cumulative) c /= total;
  return [cumulative = std::move(cumulative)](const World&, Rng& rng) {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
  };
}

std::uint64_t policy_stream_seed(std::uint64_t episode_seed) { return hash_mix(episode_seed, kPolicyStream); }

std::optional<int> first_completion(World world, const TaskSpec& task, ActPreset preset, int max_t,
                                    const IndexPolicy& policy, Rng& rng) {
  if (task.satisfied_at_reset && task.satisfied_at_reset(world)) return 0;
  for (int t = 1; t <= max_t; ++t) {
    const int index = policy(world, rng);
    const StepOutcome out = step(world, decode(preset, index, world).command);
    if (task.completes(world, out)) return t;
    if (out.done) return std::nullopt;
  }
  return std::nullopt;
}

std::optional<int> cdf_crossing(const std::vector<double>& cdf, double threshold) {
  for (std::size_t t = 0; t < cdf.size(); ++t) {
    if (cdf[t] >= threshold) return static_cast<int>(t);
  }
  return std::nullopt;
}

MonteCarloResult ttmx_monte_carlo(const WorldFactory& factory, const TaskSpec& task, double threshold,
                                  const RolloutOptions& options) {
  if (options.rollouts < 1) throw std::invalid_argument("rollouts must be >= 1");
  if (options.max_t < 0) throw std::invalid_argument("max_t must be >= 0");
  MonteCarloResult res;
  res.threshold = threshold;
  res.rollouts = options.rollouts;
  res.max_t = options.max_t;
  res.completion_times.assign(static_cast<std::size_t>(options.rollouts), -1);
  const IndexPolicy policy = uniform_policy(options.preset);
  parallel_for(static_cast<std::size_t>(options.rollouts), options.threads, [&](std::size_t i) {
    const std::uint64_t seed = options.base_seed + i;
    Rng rng(policy_stream_seed(seed));
    const auto t = first_completion(factory(seed), task, options.preset, options.max_t, policy, rng);
    res.completion_times[i] = t ? *t : -1;
  });

  std::vector<int> hist(static_cast<std::size_t>(options.max_t) + 1, 0);
  for (int t : res.completion_times) {
    if (t >= 0) {
      ++hist[static_cast<std::size_t>(t)];
      ++res.completions;
    }
  }
  res.cdf.resize(hist.size());
  int running = 0;
  for (std::size_t t = 0; t < hist.size(); ++t) {
    running += hist[t];
    res.cdf[t] = static_cast<double>(running) / options.rollouts;
  }
  res.ttmx = cdf_crossing(res.cdf, threshold);
  res.dkw_epsilon = std::sqrt(std::log(2.0 / 0.05) / (2.0 * options.rollouts));
  res.ci_low = cdf_crossing(res.cdf, threshold - res.dkw_epsilon);
  res.ci_high = cdf_crossing(res.cdf, threshold + res.dkw_epsilon);
  return res;
}

std::optional<int> ttmn_search(const WorldFactory& factory, const TaskSpec& task, ActPreset preset, int bound,
                               std::uint64_t seed) {
  const World root = factory(seed);
  if (task.satisfied_at_reset && task.satisfied_at_reset(root)) return 0;
  const int n = action_count(preset);
  std::vector<World> frontier{root};
  for (int depth = 1; depth <= bound; ++depth) {
    std::vector<World> next;
    for (const World& w : frontier) {
      for (int a = 0; a < n; ++a) {
        World child = w;
        const StepOutcome out = step(child, decode(preset, a, child).command);
        if (task.completes(child, out)) return depth;
        if (!out.done && depth < bound) next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

AnalyticParams micro_world_params(ActPreset preset, double threshold) {
  const WorldConfig cfg = micro_world_config(true);
  const World fresh = new_world(cfg, 0);
  const int water = fresh.item_id("water");
  const int n = action_count(preset);

  const auto water_on_ground = [water](const World& w) {
    for (const auto& [cell, stacks] : w.state().ground) {
      for (const auto& s : stacks) {
        if (s.item == water) return true;
      }
    }
    return false;
  };

  AnalyticParams params;
  params.required_actions = 2;
  params.expected_moves = 0;
  params.threshold = threshold;

  // Stage 0: advance = water appears on the ground.
  std::optional<World> stage1;
  int advance = 0;
  for (int a = 0; a < n; ++a) {
    World w = fresh;
    step(w, decode(preset, a, w).command);
    if (water_on_ground(w)) {
      ++advance;
      if (!stage1) stage1 = w;
    }
  }
  if (!stage1) throw std::logic_error("no action produces water in the micro-world");
  params.p_required.push_back(static_cast<double>(advance) / n);
  params.p_useless.push_back(static_cast<double>(n - advance) / n);

  // Stage 1: advance = the task completes; useless = water still on the ground.
  const TaskSpec task = obtain_task("water");
  int complete = 0;
  int useless = 0;
  for (int a = 0; a < n; ++a) {
    World w = *stage1;
    const StepOutcome out = step(w, decode(preset, a, w).command);
    if (task.completes(w, out)) {
      ++complete;
    } else if (water_on_ground(w)) {
      ++useless;
    }
  }
  params.p_required.push_back(static_cast<double>(complete) / n);
  params.p_useless.push_back(static_cast<double>(useless) / n);
  return params;
}

PicResult pic_over_goals(const WorldFactory& factory, const TaskSpec& task, const GoalLadder& ladder,
                         const PicOptions& options) {
  if (options.policies < 2) throw std::invalid_argument("pic_over_goals needs at least two policies");
  if (options.episodes < 1) throw std::invalid_argument("pic_over_goals needs at least one episode per policy");
  if (ladder.goals.empty()) throw std::invalid_argument("goal ladder is empty");
  const int max_t = ladder.goals.back().deadline;
  const int n_actions = action_count(options.preset);
  const auto n = static_cast<std::size_t>(options.policies);
  const auto m = static_cast<std::size_t>(options.episodes);

  PicResult res;
  res.completion_times.assign(n, std::vector<int>(m, -1));
  parallel_for(n * m, options.threads, [&](std::size_t k) {
    const std::size_t i = k / m;
    const std::size_t j = k % m;
    Rng prior(hash_mix(options.base_seed, kPriorStream, i));
    std::vector<double> logits(static_cast<std::size_t>(n_actions));
    for (double& l : logits) l = prior.normal();
    const IndexPolicy policy = logit_policy(std::move(logits));
    const std::uint64_t seed = options.base_seed + k;
    Rng rng(policy_stream_seed(seed));
    const auto t = first_completion(factory(seed), task, options.preset, max_t, policy, rng);
    res.completion_times[i][j] = t ? *t : -1;
  });

  for (const auto& goal : ladder.goals) {
    std::vector<std::vector<double>> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (int t : res.completion_times[i]) scores[i].push_back(t >= 0 && t <= goal.deadline ? 1.0 : 0.0);
    }
    res.pic.push_back(pic_estimate(scores, options.bins));
  }
  return res;
}

}  // namespace eden
