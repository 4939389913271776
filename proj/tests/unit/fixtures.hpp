#pragma once

#include <initializer_list>
#include <string>

#include "eden/config.hpp"
#include "eden/engine.hpp"

namespace eden::test {

// Empty plain map with the day_and_night rules; the agent sits at (x, y).
inline WorldConfig plain_config(int size = 9, int x = 4, int y = 4) {
  WorldConfig cfg = preset("day_and_night");
  cfg.name = "plain";
  cfg.map_width = size;
  cfg.map_height = size;
  cfg.terrain_spec.geographies = {Geography{"plain", 1.0, {}}};
  cfg.terrain_spec.require.clear();
  cfg.agent_spawn = {AgentSpawn::Mode::fixed, x, y};
  return cfg;
}

inline WorldConfig with_placements(WorldConfig cfg, std::initializer_list<Placement> ps) {
  for (const auto& p : ps) cfg.terrain_spec.placements.push_back(p);
  return cfg;
}

inline ActionCommand idle() { return {ActionId::idle, 0, 0}; }
inline ActionCommand move(int dx, int dy) { return {ActionId::move, dx, dy}; }
inline ActionCommand attack(int x, int y) { return {ActionId::attack, x, y}; }
inline ActionCommand collect(int x, int y) { return {ActionId::collect, x, y}; }

inline ActionCommand item_cmd(const World& w, ActionId id, const std::string& item, int count = 1) {
  return {id, w.item_id(item), count};
}

inline int ground_count(const World& w, int item) {
  int n = 0;
  for (const auto& [cell, stacks] : w.state().ground) {
    for (const auto& s : stacks) {
      if (s.item == item) n += s.count;
    }
  }
  return n;
}

inline int equipped_count(const World& w, int item) {
  int n = 0;
  for (const auto& s : w.state().agent.equipment) n += s.item == item ? 1 : 0;
  return n;
}

}  // namespace eden::test
