#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "eden/harness.hpp"
#include "eden/rollout.hpp"

namespace eden {

namespace {

// baseline9 indices
constexpr int kAttackNearest = 0;
constexpr int kCollectAuto = 1;
constexpr int kPickupAuto = 2;
constexpr int kConsumeAuto = 3;
constexpr int kEquipTorch = 4;
constexpr int kSynthesizeTorch = 5;
constexpr int kMoveToPig = 7;

int idle_index(ActPreset preset) {
  const auto& list = actions(preset);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].verb == Verb::idle) return static_cast<int>(i);
  }
  throw std::logic_error("action preset has no idle action");
}

class IdlePolicy final : public Policy {
 public:
  explicit IdlePolicy(const Environment& env) : index_(env.action_count() > 0 ? idle_index(env.bundle().act) : 0) {}
  void begin_episode(std::uint64_t) override {}
  EnvAction act(const Environment&, const std::vector<double>&) override { return {index_, 0, 0}; }

 private:
  int index_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed) {}
  void begin_episode(std::uint64_t episode_seed) override { rng_ = Rng(hash_mix(seed_, episode_seed)); }
  EnvAction act(const Environment& env, const std::vector<double>&) override {
    const int n = env.action_count();
    if (n > 0) return {static_cast<int>(rng_.below(static_cast<std::uint64_t>(n))), 0, 0};
    // continuous offsets slightly wider than the clip range
    return {0, rng_.uniform() * 6 - 3, rng_.uniform() * 6 - 3};
  }

 private:
  std::uint64_t seed_;
  Rng rng_;
};

class LogitPolicy final : public Policy {
 public:
  LogitPolicy(std::uint64_t seed, int n) : seed_(seed) {
    Rng prior(seed);
    std::vector<double> logits(static_cast<std::size_t>(n));
    for (double& l : logits) l = prior.normal();
    sample_ = logit_policy(std::move(logits));
  }
  void begin_episode(std::uint64_t episode_seed) override { rng_ = Rng(hash_mix(seed_, episode_seed)); }
  EnvAction act(const Environment& env, const std::vector<double>&) override {
    return {sample_(*env.survival_world(), rng_), 0, 0};
  }

 private:
  std::uint64_t seed_;
  Rng rng_;
  IndexPolicy sample_;
};

class ScriptedPolicy final : public Policy {
 public:
  void begin_episode(std::uint64_t) override {}
  EnvAction act(const Environment& env, const std::vector<double>&) override {
    return {scripted_survival(*env.survival_world()), 0, 0};
  }
};

class NavGreedyPolicy final : public Policy {
 public:
  void begin_episode(std::uint64_t) override {}
  EnvAction act(const Environment& env, const std::vector<double>& obs) override {
    const NavState& s = *env.nav_state();
    const auto off = nav_greedy({obs[0], obs[1]}, s.goal, s.max_offset);
    return {0, off[0], off[1]};
  }
};

bool ground_item_in_reach(const World& world, int item) {
  if (item <= 0) return false;
  const Position a = world.state().agent.pos;
  const int reach = world.config().reach;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const Position p{a.x + dx, a.y + dy};
      if (!world.in_map(p)) continue;
      if (const auto* stacks = world.ground_at(p)) {
        for (const auto& s : *stacks) {
          if (s.item == item) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::idle: return "idle";
    case PolicyKind::random: return "random";
    case PolicyKind::scripted_survival: return "scripted_survival";
    case PolicyKind::nav_greedy: return "nav_greedy";
    case PolicyKind::random_logit: return "random_logit";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (auto k : {PolicyKind::idle, PolicyKind::random, PolicyKind::scripted_survival, PolicyKind::nav_greedy,
                 PolicyKind::random_logit}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const Environment& env) {
  const bool nav = env.config().kind == WorldKind::navigation;
  switch (spec.kind) {
    case PolicyKind::idle: return std::make_unique<IdlePolicy>(env);
    case PolicyKind::random: return std::make_unique<RandomPolicy>(spec.seed);
    case PolicyKind::random_logit:
      if (nav) throw std::invalid_argument("random_logit needs a discrete action preset");
      return std::make_unique<LogitPolicy>(spec.seed, env.action_count());
    case PolicyKind::scripted_survival:
      if (nav || env.bundle().act != ActPreset::baseline9) {
        throw std::invalid_argument("scripted_survival needs a survival world with baseline9 actions");
      }
      return std::make_unique<ScriptedPolicy>();
    case PolicyKind::nav_greedy:
      if (!nav) throw std::invalid_argument("nav_greedy needs a navigation world");
      return std::make_unique<NavGreedyPolicy>();
  }
  throw std::invalid_argument("unknown policy kind");
}

std::array<double, 2> nav_greedy(const NavObservation& obs, Position goal, int max_offset) {
  const auto axis = [max_offset](double d) {
    return std::clamp(std::trunc(d), -static_cast<double>(max_offset), static_cast<double>(max_offset));
  };
  return {axis(goal.x - obs[0]), axis(goal.y - obs[1])};
}

int scripted_survival(const World& world) {
  const auto& st = world.state();
  const auto& agent = st.agent;
  const double cap = world.satiety_cap();
  const int meat = world.item_id("meat");
  const int water = world.item_id("water");
  const int wood = world.item_id("wood");
  const int torch = world.item_id("torch");
  const int held_meat = meat > 0 ? world.backpack_count(meat) : 0;
  const int held_water = water > 0 ? world.backpack_count(water) : 0;
  const int held_wood = wood > 0 ? world.backpack_count(wood) : 0;

  // consume_auto eats meat when satiety <= thirsty, else drinks
  const bool wants_meat = agent.satiety <= agent.thirsty;
  const double low_bar = std::min(agent.satiety, agent.thirsty);
  if (low_bar < 0.4 * cap && (wants_meat ? held_meat : held_water) > 0) return kConsumeAuto;

  if (ground_item_in_reach(world, meat) || ground_item_in_reach(world, water) || ground_item_in_reach(world, wood)) {
    return kPickupAuto;
  }

  if (st.phase == Phase::night && torch > 0 && world.equipped_item(EquipSlot::hand) != torch) {
    if (world.backpack_count(torch) > 0) return kEquipTorch;
    if (held_wood >= 2) return kSynthesizeTorch;
  }

  const int pig = world.config().creature_index("pig");
  const int river = world.config().creature_index("river");
  const int tree = world.config().creature_index("tree");
  const bool pig_visible = pig >= 0 && !visible_entities(world, pig).empty();
  const bool river_visible = river >= 0 && !visible_entities(world, river).empty();
  const bool tree_visible = tree >= 0 && !visible_entities(world, tree).empty();

  // a blocked approach rotates through the other targets so it cannot repeat forever
  if (st.last_failure == FailureReason::blocked) {
    std::vector<int> options{kMoveToPig};
    if (river_visible || tree_visible) options.push_back(kCollectAuto);
    if (pig_visible) options.push_back(kAttackNearest);
    return options[static_cast<std::size_t>(st.clock) % options.size()];
  }

  const bool need_meat = held_meat < 2 && (agent.satiety <= agent.thirsty || held_water >= 2);
  if (need_meat && pig_visible) return kAttackNearest;

  if (held_water < 2 && (river_visible || tree_visible)) return kCollectAuto;
  if (held_wood < 2 && tree_visible) return kCollectAuto;
  if (held_meat < 2 && pig_visible) return kAttackNearest;
  return kMoveToPig;
}

}  // namespace eden
