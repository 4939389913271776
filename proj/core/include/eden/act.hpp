#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eden/engine.hpp"

namespace eden {

enum class ActPreset { baseline9, pig3, pig5, expand_consume, expand_pickup, expand_collect, expand_all };

std::string_view to_string(ActPreset p);
std::optional<ActPreset> parse_act_preset(std::string_view name);
std::vector<ActPreset> all_act_presets();

enum class Verb {
  attack_nearest,
  attack_pig,  // k-th nearest visible pig
  collect_auto,
  collect_river,
  collect_tree,
  pickup_auto,
  pickup_meat,
  pickup_water,
  pickup_wood,
  consume_auto,
  consume_meat,
  consume_water,
  equip_torch,
  synthesize_torch,
  discard_torch,
  move_to_pig,    // nearest visible pig, else exploratory
  move_to_pig_k,  // k-th nearest visible pig
  idle,
};

struct AbstractAction {
  Verb verb = Verb::idle;
  int k = 0;  // 1-based pig rank for attack_pig / move_to_pig_k
  std::string name;

  bool operator==(const AbstractAction&) const = default;
};

const std::vector<AbstractAction>& actions(ActPreset preset);
int action_count(ActPreset preset);

enum class DecodeNote { direct, approach, untargeted };
std::string_view to_string(DecodeNote n);

struct DecodedAction {
  ActionCommand command;
  DecodeNote note = DecodeNote::direct;

  bool operator==(const DecodedAction&) const = default;
};

// Resolves an abstract action against the current state. A target outside
// reach yields a move toward it; no target yields an idle command.
DecodedAction decode(ActPreset preset, int index, const World& world);

struct CatalogEntry {
  ActPreset preset;
  std::vector<std::string> names;
};

std::vector<CatalogEntry> preset_catalog();

// Visible entities of one kind (or every attackable kind when kind < 0),
// ordered by (squared distance, id).
std::vector<const Entity*> visible_entities(const World& world, int kind);

}  // namespace eden
