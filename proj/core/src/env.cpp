#include "eden/env.hpp"

#include <stdexcept>

namespace eden {

Bundle native_bundle() { return {ObsPreset::native, ActPreset::baseline9, RewardVariant::dense}; }

SurvivalEnv::SurvivalEnv(WorldConfig cfg, Bundle bundle, std::optional<int> max_steps)
    : Environment(std::move(cfg), bundle, max_steps) {
  if (cfg_.kind != WorldKind::survival) throw std::invalid_argument("SurvivalEnv needs a survival config");
  dim_ = dimension(cfg_, bundle_.obs);
  reward_ = reward_spec(bundle_.reward, cfg_);
}

std::vector<double> SurvivalEnv::observe() const {
  if (!world_) throw ContractViolation("environment has not been reset");
  RawObservation raw = assemble_raw(*world_);
  if (bundle_.obs == ObsPreset::raw) return std::move(raw.values);
  return wrap(raw, bundle_.obs).values;
}

std::vector<double> SurvivalEnv::reset(std::uint64_t seed) {
  world_.emplace(new_world(cfg_, seed));
  done_ = false;
  return observe();
}

Transition SurvivalEnv::step(const EnvAction& action) {
  if (!world_) throw ContractViolation("environment has not been reset");
  if (done_) throw ContractViolation("step called on a finished episode");
  Transition tr;
  tr.decoded = decode(bundle_.act, action.index, *world_);
  StepOutcome out = eden::step(*world_, tr.decoded.command);
  if (!out.done && max_steps_ && out.lifetime >= *max_steps_) {
    tr.truncated = true;
    Event ev;
    ev.type = EventType::horizon;
    ev.pos = world_->state().agent.pos;
    out.events.push_back(ev);
  }
  tr.done = out.done || tr.truncated;
  done_ = tr.done;
  tr.reward = compute_reward(out, tr.done, reward_);
  tr.result = out.result;
  tr.lifetime = out.lifetime;
  tr.cause = out.cause;
  tr.events = std::move(out.events);
  tr.obs = observe();
  return tr;
}

NavEnv::NavEnv(WorldConfig cfg, std::optional<int> max_steps)
    : Environment(std::move(cfg), native_bundle(), max_steps) {
  if (cfg_.kind != WorldKind::navigation) throw std::invalid_argument("NavEnv needs a navigation config");
}

std::vector<double> NavEnv::reset(std::uint64_t seed) {
  NavReset r = nav_reset(cfg_, seed);
  state_ = r.state;
  if (max_steps_ && *max_steps_ < state_->horizon) state_->horizon = *max_steps_;
  return {r.obs[0], r.obs[1]};
}

Transition NavEnv::step(const EnvAction& action) {
  if (!state_) throw ContractViolation("environment has not been reset");
  NavStep s = nav_step(*state_, action.ox, action.oy);
  Transition tr;
  tr.obs = {s.obs[0], s.obs[1]};
  tr.reward = s.reward;
  tr.done = s.done;
  tr.applied = s.applied;
  tr.decoded.command = {ActionId::move, s.applied[0], s.applied[1]};
  tr.lifetime = state_->t;
  return tr;
}

std::unique_ptr<Environment> make_env(const WorldConfig& cfg, const Bundle& bundle, std::optional<int> max_steps) {
  if (cfg.kind == WorldKind::navigation) return std::make_unique<NavEnv>(cfg, max_steps);
  if (bundle.obs == ObsPreset::native) throw std::invalid_argument("native observation is navigation-only");
  return std::make_unique<SurvivalEnv>(cfg, bundle, max_steps);
}

}  // namespace eden
