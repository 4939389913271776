#include "eden/config.hpp"

#include <set>

namespace eden {

int WorldConfig::creature_index(std::string_view kind) const {
  for (std::size_t i = 0; i < creature_specs.size(); ++i) {
    if (creature_specs[i].kind == kind) return static_cast<int>(i);
  }
  return -1;
}

int WorldConfig::item_index(std::string_view id) const {
  for (std::size_t i = 0; i < item_specs.size(); ++i) {
    if (item_specs[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

const CreatureSpec* WorldConfig::creature(std::string_view kind) const {
  const int i = creature_index(kind);
  return i < 0 ? nullptr : &creature_specs[static_cast<std::size_t>(i)];
}

const ItemSpec* WorldConfig::item(std::string_view id) const {
  const int i = item_index(id);
  return i < 0 ? nullptr : &item_specs[static_cast<std::size_t>(i)];
}

std::string Violation::to_string() const { return field + " " + rule; }

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += "; ";
    out += v.to_string();
  }
  return out;
}

class Checker {
 public:
  explicit Checker(std::vector<Violation>& out) : out_(out) {}

  void require(bool ok, std::string field, std::string rule) {
    if (!ok) out_.push_back({std::move(field), std::move(rule)});
  }

 private:
  std::vector<Violation>& out_;
};

std::string indexed(std::string_view list, std::size_t i) {
  return std::string(list) + "[" + std::to_string(i) + "]";
}

}  // namespace

ConfigError::ConfigError(Kind kind, std::string message, std::vector<Violation> violations)
    : std::runtime_error(violations.empty() ? message
                                            : message + ": " + join_violations(violations)),
      kind_(kind),
      violations_(std::move(violations)) {}

std::vector<Violation> validate(const WorldConfig& cfg) {
  std::vector<Violation> out;
  Checker check(out);

  check.require(cfg.map_width >= 3, "map_width", "≥ 3");
  check.require(cfg.map_height >= 3, "map_height", "≥ 3");
  check.require(cfg.life_limit >= 1, "life_limit", "≥ 1");
  check.require(cfg.decay_satiety >= 0, "decay_satiety", "≥ 0");
  check.require(cfg.decay_thirsty >= 0, "decay_thirsty", "≥ 0");
  check.require(cfg.day_length >= 1, "day_length", "≥ 1");
  check.require(cfg.night_length >= 0, "night_length", "≥ 0");
  check.require(cfg.season_length >= 0, "season_length", "≥ 0");
  check.require(cfg.vision_day >= 1, "vision_day", "≥ 1");
  check.require(cfg.vision_night >= 1, "vision_night", "≥ 1");
  check.require(cfg.vision_torch >= 1, "vision_torch", "≥ 1");
  check.require(cfg.move_radius >= 1, "move_radius", "≥ 1");
  check.require(cfg.reach >= 1, "reach", "≥ 1");
  check.require(cfg.observation.max_creatures >= 0, "observation.max_creatures", "≥ 0");
  check.require(cfg.observation.max_materials >= 0, "observation.max_materials", "≥ 0");

  std::set<std::string> kinds;
  for (std::size_t i = 0; i < cfg.creature_specs.size(); ++i) {
    const auto& c = cfg.creature_specs[i];
    const auto field = indexed("creature_specs", i);
    check.require(!c.kind.empty(), field + ".kind", "non-empty");
    check.require(kinds.insert(c.kind).second, field + ".kind",
                  "unique (duplicate \"" + c.kind + "\")");
    if (c.behavior == Behavior::flee) {
      check.require(c.flee_radius > 0, field + ".flee_radius", "> 0 for flee behavior");
    }
    if (c.behavior == Behavior::aggressive) {
      check.require(c.aggro_radius > 0, field + ".aggro_radius", "> 0 for aggressive behavior");
    }
    check.require(c.flee_radius >= 0, field + ".flee_radius", "≥ 0");
    check.require(c.aggro_radius >= 0, field + ".aggro_radius", "≥ 0");
    check.require(c.move_speed >= 0, field + ".move_speed", "≥ 0");
    check.require(!c.collect_capacity || *c.collect_capacity >= 0, field + ".collect_capacity",
                  "≥ 0 or null");
    for (const auto& [name, value] : c.attributes) {
      check.require(value >= 0, field + ".attributes." + name, "≥ 0");
    }
    if (auto it = c.attributes.find("move_speed"); it != c.attributes.end()) {
      check.require(it->second == c.move_speed, field + ".attributes.move_speed",
                    "equals move_speed");
    }
  }

  if (cfg.kind == WorldKind::survival) {
    const CreatureSpec* agent = cfg.creature("agent");
    check.require(agent != nullptr, "creature_specs", "contains kind \"agent\"");
    if (agent) {
      for (const char* name : {"hp", "attack", "defense"}) {
        check.require(agent->attributes.contains(name), "creature_specs.agent.attributes",
                      std::string("has \"") + name + "\"");
      }
      for (const char* name : {"satiety", "thirsty"}) {
        check.require(!agent->attributes.contains(name), "creature_specs.agent.attributes",
                      std::string("omits \"") + name + "\" (derived from life_limit)");
      }
      if (auto it = agent->attributes.find("hp"); it != agent->attributes.end()) {
        check.require(it->second > 0, "creature_specs.agent.attributes.hp", "> 0");
      }
    }
  } else {
    check.require(cfg.navigation.horizon >= 1, "navigation.horizon", "≥ 1");
    check.require(cfg.navigation.goal_tolerance > 0, "navigation.goal_tolerance", "> 0");
    check.require(cfg.navigation.max_offset >= 1, "navigation.max_offset", "≥ 1");
  }

  std::set<std::string> items;
  for (std::size_t i = 0; i < cfg.item_specs.size(); ++i) {
    const auto& it = cfg.item_specs[i];
    const auto field = indexed("item_specs", i);
    check.require(!it.id.empty(), field + ".id", "non-empty");
    check.require(items.insert(it.id).second, field + ".id", "unique (duplicate \"" + it.id + "\")");
    check.require(it.satiety_gain >= 0 && it.thirsty_gain >= 0, field, "gains ≥ 0");
    if (it.consumable) {
      check.require(it.satiety_gain > 0 || it.thirsty_gain > 0, field,
                    "consumable ⇒ at least one gain > 0");
    }
    if (it.slot != EquipSlot::none) {
      check.require(it.durability >= 1, field + ".durability", "≥ 1 for equipable items");
      check.require(!it.stackable, field + ".stackable", "false for equipable items");
    }
  }

  auto resolve_item = [&](const std::string& id, const std::string& field) {
    check.require(items.contains(id), field, "unknown item \"" + id + "\"");
  };
  auto resolve_kind = [&](const std::string& kind, const std::string& field) {
    check.require(kinds.contains(kind), field, "unknown creature \"" + kind + "\"");
  };

  for (std::size_t i = 0; i < cfg.synthesis_table.size(); ++i) {
    const auto& r = cfg.synthesis_table[i];
    const auto field = indexed("synthesis_table", i);
    resolve_item(r.output, field + ".output");
    check.require(!r.inputs.empty(), field + ".inputs", "non-empty");
    for (std::size_t j = 0; j < r.inputs.size(); ++j) {
      const auto in_field = field + indexed(".inputs", j);
      resolve_item(r.inputs[j].item, in_field + ".item");
      check.require(r.inputs[j].count >= 1, in_field + ".count", "≥ 1");
      check.require(r.inputs[j].item != r.output, in_field + ".item",
                    "differs from the recipe output");
    }
  }

  for (std::size_t i = 0; i < cfg.drop_table.size(); ++i) {
    const auto& d = cfg.drop_table[i];
    const auto field = indexed("drop_table", i);
    resolve_kind(d.source, field + ".source");
    for (std::size_t j = 0; j < d.items.size(); ++j) {
      resolve_item(d.items[j].item, field + indexed(".items", j) + ".item");
      check.require(d.items[j].count >= 1, field + indexed(".items", j) + ".count", "≥ 1");
    }
  }

  std::set<std::string> buffs;
  for (std::size_t i = 0; i < cfg.buff_specs.size(); ++i) {
    const auto& b = cfg.buff_specs[i];
    const auto field = indexed("buff_specs", i);
    check.require(buffs.insert(b.id).second, field + ".id", "unique (duplicate \"" + b.id + "\")");
    check.require(!b.duration || *b.duration >= 1, field + ".duration", "≥ 1 or null");
    if (b.when.min_bar_fraction) {
      check.require(*b.when.min_bar_fraction >= 0 && *b.when.min_bar_fraction <= 1,
                    field + ".when.min_bar_fraction", "in [0, 1]");
    }
  }

  const auto& t = cfg.terrain_spec;
  check.require(t.region_size >= 1, "terrain.region_size", "≥ 1");
  check.require(!t.geographies.empty(), "terrain.geographies", "non-empty");
  double weight_sum = 0;
  std::set<std::string> geos;
  for (std::size_t i = 0; i < t.geographies.size(); ++i) {
    const auto& g = t.geographies[i];
    const auto field = indexed("terrain.geographies", i);
    check.require(geos.insert(g.id).second, field + ".id", "unique (duplicate \"" + g.id + "\")");
    check.require(g.weight >= 0, field + ".weight", "≥ 0");
    weight_sum += g.weight;
    for (const auto& [kind, density] : g.spawn) {
      resolve_kind(kind, field + ".spawn");
      check.require(density >= 0 && density <= 1, field + ".spawn." + kind, "in [0, 1]");
      check.require(kind != "agent", field + ".spawn", "excludes \"agent\"");
    }
  }
  if (!t.geographies.empty()) {
    check.require(weight_sum > 0, "terrain.geographies", "weights sum > 0");
  }
  for (std::size_t i = 0; i < t.placements.size(); ++i) {
    const auto& p = t.placements[i];
    const auto field = indexed("terrain.placements", i);
    resolve_kind(p.kind, field + ".kind");
    check.require(p.x >= 0 && p.x < cfg.map_width && p.y >= 0 && p.y < cfg.map_height,
                  field, "inside the map");
  }
  for (const auto& kind : t.require) resolve_kind(kind, "terrain.require");

  check.require(cfg.weather.region_size >= 1, "weather.region_size", "≥ 1");
  check.require(cfg.weather.rain.size() == 4 && cfg.weather.snow.size() == 4, "weather",
                "rain and snow have 4 seasonal entries");
  if (cfg.weather.rain.size() == 4 && cfg.weather.snow.size() == 4) {
    for (std::size_t s = 0; s < 4; ++s) {
      const double r = cfg.weather.rain[s];
      const double w = cfg.weather.snow[s];
      check.require(r >= 0 && w >= 0 && r + w <= 1, "weather", "probabilities in [0, 1]");
    }
  }

  if (cfg.agent_spawn.mode == AgentSpawn::Mode::fixed) {
    check.require(cfg.agent_spawn.x >= 0 && cfg.agent_spawn.x < cfg.map_width &&
                      cfg.agent_spawn.y >= 0 && cfg.agent_spawn.y < cfg.map_height,
                  "agent_spawn", "inside the map");
  }
  for (std::size_t i = 0; i < cfg.initial_inventory.size(); ++i) {
    resolve_item(cfg.initial_inventory[i].item, indexed("initial_inventory", i) + ".item");
    check.require(cfg.initial_inventory[i].count >= 1,
                  indexed("initial_inventory", i) + ".count", "≥ 1");
  }
  return out;
}

std::string_view to_string(WorldKind v) {
  return v == WorldKind::survival ? "survival" : "navigation";
}

std::string_view to_string(Behavior v) {
  switch (v) {
    case Behavior::static_: return "static";
    case Behavior::flee: return "flee";
    case Behavior::aggressive: return "aggressive";
  }
  return "static";
}

std::string_view to_string(EquipSlot v) {
  switch (v) {
    case EquipSlot::none: return "none";
    case EquipSlot::hand: return "hand";
    case EquipSlot::body: return "body";
  }
  return "none";
}

std::string_view to_string(BuffSource v) {
  switch (v) {
    case BuffSource::basic: return "basic";
    case BuffSource::environment: return "environment";
    case BuffSource::terrain: return "terrain";
    case BuffSource::equipment: return "equipment";
  }
  return "basic";
}

std::string_view to_string(DropTrigger v) { return v == DropTrigger::kill ? "kill" : "collect"; }

std::string_view to_string(Phase v) { return v == Phase::day ? "day" : "night"; }

std::string_view to_string(Season v) {
  switch (v) {
    case Season::none: return "none";
    case Season::spring: return "spring";
    case Season::summer: return "summer";
    case Season::autumn: return "autumn";
    case Season::winter: return "winter";
  }
  return "none";
}

std::string_view to_string(VisionMode v) {
  switch (v) {
    case VisionMode::day: return "day";
    case VisionMode::night: return "night";
    case VisionMode::torch: return "torch";
  }
  return "day";
}

}  // namespace eden
