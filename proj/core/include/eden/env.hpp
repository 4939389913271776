#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eden/act.hpp"
#include "eden/nav.hpp"
#include "eden/obs.hpp"
#include "eden/reward.hpp"

namespace eden {

// The (observation, action, reward) presets an environment is built with.
struct Bundle {
  ObsPreset obs = ObsPreset::baseline;
  ActPreset act = ActPreset::baseline9;
  RewardVariant reward = RewardVariant::dense;

  bool operator==(const Bundle&) const = default;
};

// Survival worlds read `index`; navigation reads the (ox, oy) offset.
struct EnvAction {
  int index = 0;
  double ox = 0;
  double oy = 0;
};

struct Transition {
  std::vector<double> obs;
  double reward = 0;
  bool done = false;
  bool truncated = false;  // ended by max_steps rather than by the world
  std::vector<Event> events;
  DecodedAction decoded;
  std::array<int, 2> applied{};  // navigation offset after clipping
  ActionResult result = ActionResult::success;
  std::int64_t lifetime = 0;
  DeathCause cause = DeathCause::none;
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::vector<double> reset(std::uint64_t seed) = 0;
  virtual Transition step(const EnvAction& action) = 0;

  virtual int obs_dim() const = 0;
  // 0 for continuous action spaces.
  virtual int action_count() const = 0;
  virtual bool done() const = 0;
  virtual bool ready() const = 0;

  const WorldConfig& config() const { return cfg_; }
  const Bundle& bundle() const { return bundle_; }
  std::optional<int> max_steps() const { return max_steps_; }

  virtual const World* survival_world() const { return nullptr; }
  virtual const NavState* nav_state() const { return nullptr; }

 protected:
  Environment(WorldConfig cfg, Bundle bundle, std::optional<int> max_steps)
      : cfg_(std::move(cfg)), bundle_(bundle), max_steps_(max_steps) {}

  WorldConfig cfg_;
  Bundle bundle_;
  std::optional<int> max_steps_;
};

class SurvivalEnv final : public Environment {
 public:
  SurvivalEnv(WorldConfig cfg, Bundle bundle, std::optional<int> max_steps = std::nullopt);

  std::vector<double> reset(std::uint64_t seed) override;
  Transition step(const EnvAction& action) override;

  int obs_dim() const override { return dim_; }
  int action_count() const override { return eden::action_count(bundle_.act); }
  bool done() const override { return done_; }
  bool ready() const override { return world_.has_value(); }
  const World* survival_world() const override { return world_ ? &*world_ : nullptr; }

  std::vector<double> observe() const;

 private:
  std::optional<World> world_;
  RewardSpec reward_;
  int dim_ = 0;
  bool done_ = false;
};

class NavEnv final : public Environment {
 public:
  NavEnv(WorldConfig cfg, std::optional<int> max_steps = std::nullopt);

  std::vector<double> reset(std::uint64_t seed) override;
  Transition step(const EnvAction& action) override;

  int obs_dim() const override { return 2; }
  int action_count() const override { return 0; }
  bool done() const override { return !state_ || state_->done; }
  bool ready() const override { return state_.has_value(); }
  const NavState* nav_state() const override { return state_ ? &*state_ : nullptr; }

 private:
  std::optional<NavState> state_;
};

// Validates the bundle against the config's world kind before building.
std::unique_ptr<Environment> make_env(const WorldConfig& cfg, const Bundle& bundle,
                                      std::optional<int> max_steps = std::nullopt);

// The bundle a navigation world uses regardless of request.
Bundle native_bundle();

}  // namespace eden
