#include <algorithm>

#include "eden/engine.hpp"

namespace eden {

namespace {

bool holds(const World& world, const BuffCondition& when) {
  const auto& st = world.state();
  const auto& agent = st.agent;
  if (when.phase && st.phase != *when.phase) return false;
  if (when.season && st.season != *when.season) return false;
  if (when.weather && to_string(world.weather_at(agent.pos)) != *when.weather) return false;
  if (when.terrain) {
    const auto& geos = world.config().terrain_spec.geographies;
    if (geos[static_cast<std::size_t>(world.geography_at(agent.pos))].id != *when.terrain) return false;
  }
  const auto is_equipped = [&](const std::string& name) {
    const int item = world.item_id(name);
    if (item <= 0) return false;
    return std::any_of(agent.equipment.begin(), agent.equipment.end(),
                       [item](const Slot& s) { return s.item == item; });
  };
  if (when.equipped && !is_equipped(*when.equipped)) return false;
  if (when.not_equipped && is_equipped(*when.not_equipped)) return false;
  if (when.min_bar_fraction) {
    const double f = *when.min_bar_fraction;
    if (agent.satiety < f * world.satiety_cap() || agent.thirsty < f * world.thirsty_cap()) return false;
  }
  return true;
}

}  // namespace

void World::refresh_buffs(bool tick) {
  const auto& specs = rules_->cfg.buff_specs;
  auto& active = state_.agent.active_buffs;
  std::vector<BuffInstance> next;
  next.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    const bool cond = holds(*this, spec.when);
    if (!spec.duration) {
      if (cond) next.push_back({static_cast<int>(i), spec.source, std::nullopt});
      continue;
    }
    auto prev = std::find_if(active.begin(), active.end(),
                             [i](const BuffInstance& b) { return b.buff == static_cast<int>(i); });
    if (cond) {
      next.push_back({static_cast<int>(i), spec.source, *spec.duration});
    } else if (prev != active.end() && prev->remaining) {
      const int left = *prev->remaining - (tick ? 1 : 0);
      if (left > 0) next.push_back({static_cast<int>(i), spec.source, left});
    }
  }
  active = std::move(next);
}

bool World::buff_active(int buff) const {
  const auto& active = state_.agent.active_buffs;
  return std::any_of(active.begin(), active.end(), [buff](const BuffInstance& b) { return b.buff == buff; });
}

bool World::buff_active(std::string_view id) const {
  const auto& specs = rules_->cfg.buff_specs;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].id == id) return buff_active(static_cast<int>(i));
  }
  return false;
}

double World::effective_attack() const {
  double v = state_.agent.attack;
  for (const auto& b : state_.agent.active_buffs) v += rules_->cfg.buff_specs[static_cast<std::size_t>(b.buff)].effect.attack;
  return v;
}

double World::effective_defense() const {
  double v = state_.agent.defense;
  for (const auto& b : state_.agent.active_buffs) v += rules_->cfg.buff_specs[static_cast<std::size_t>(b.buff)].effect.defense;
  return v;
}

int World::effective_move_radius() const {
  int v = rules_->cfg.move_radius;
  for (const auto& b : state_.agent.active_buffs) v += rules_->cfg.buff_specs[static_cast<std::size_t>(b.buff)].effect.move_radius;
  return std::max(1, v);
}

}  // namespace eden
