#include <algorithm>

#include "eden/engine.hpp"

namespace eden {

namespace {

constexpr std::uint64_t kMapStream = 0x6d61702d67656eULL;  // "map-gen"
constexpr std::uint64_t kDynStream = 0x64796e616d6963ULL;  // "dynamic"
constexpr std::uint64_t kWeatherStream = 0x77656174686572ULL;

std::vector<std::pair<int, int>> resolve_counts(const WorldConfig& cfg,
                                                const std::vector<ItemCount>& items) {
  std::vector<std::pair<int, int>> out;
  for (const auto& ic : items) out.emplace_back(cfg.item_index(ic.item) + 1, ic.count);
  return out;
}

int pick_weighted(Rng& rng, const std::vector<Geography>& geos) {
  double total = 0;
  for (const auto& g : geos) total += g.weight;
  const double u = rng.uniform() * total;
  double acc = 0;
  for (std::size_t i = 0; i < geos.size(); ++i) {
    acc += geos[i].weight;
    if (u < acc) return static_cast<int>(i);
  }
  // u == total only through rounding; fall back to the last positive weight
  for (std::size_t i = geos.size(); i-- > 0;) {
    if (geos[i].weight > 0) return static_cast<int>(i);
  }
  return 0;
}

void add_to_backpack(AgentEntity& agent, const ItemSpec& spec, int item, int count) {
  if (spec.stackable) {
    for (auto& slot : agent.backpack) {
      if (slot.item == item) {
        slot.amount += count;
        return;
      }
    }
    for (auto& slot : agent.backpack) {
      if (slot.item == 0) {
        slot = {item, count};
        return;
      }
    }
    throw GenerationError("initial inventory exceeds backpack capacity");
  }
  for (int i = 0; i < count; ++i) {
    auto it = std::find_if(agent.backpack.begin(), agent.backpack.end(),
                           [](const Slot& s) { return s.item == 0; });
    if (it == agent.backpack.end()) throw GenerationError("initial inventory exceeds backpack capacity");
    *it = {item, spec.durability};
  }
}

}  // namespace

std::shared_ptr<const Rules> compile_rules(const WorldConfig& cfg) {
  auto rules = std::make_shared<Rules>();
  rules->cfg = cfg;
  rules->agent_kind = cfg.creature_index("agent");
  for (const auto& spec : cfg.creature_specs) {
    KindRules k;
    k.behavior = spec.behavior;
    k.flee_radius = spec.flee_radius;
    k.aggro_radius = spec.aggro_radius;
    k.move_speed = spec.move_speed;
    k.collect_capacity = spec.collect_capacity;
    int idx = 0;
    for (const auto& [name, value] : spec.attributes) {
      if (name == "hp") k.hp_attr = idx;
      if (name == "attack") k.attack_attr = idx;
      k.attribute_names.push_back(name);
      k.initial_attributes.push_back(value);
      ++idx;
    }
    for (const auto& drop : cfg.drop_table) {
      if (drop.source != spec.kind) continue;
      auto& target = drop.trigger == DropTrigger::kill ? k.kill_drops : k.collect_drops;
      for (auto& p : resolve_counts(cfg, drop.items)) target.push_back(p);
    }
    rules->kinds.push_back(std::move(k));
  }
  for (const auto& recipe : cfg.synthesis_table) {
    rules->recipe_inputs.push_back(resolve_counts(cfg, recipe.inputs));
    rules->recipe_output.push_back(cfg.item_index(recipe.output) + 1);
  }
  return rules;
}

Phase phase_at(const WorldConfig& cfg, std::int64_t clock) {
  const std::int64_t cycle = cfg.day_length + cfg.night_length;
  if (cfg.night_length <= 0 || cycle <= 0) return Phase::day;
  return (clock % cycle) < cfg.day_length ? Phase::day : Phase::night;
}

Season season_at(const WorldConfig& cfg, std::int64_t clock) {
  if (cfg.season_length <= 0) return Season::none;
  switch ((clock / cfg.season_length) % 4) {
    case 0: return Season::spring;
    case 1: return Season::summer;
    case 2: return Season::autumn;
    default: return Season::winter;
  }
}

Weather World::weather_at(Position p) const {
  const auto& cfg = rules_->cfg;
  if (state_.season == Season::none) return Weather::clear;
  const auto s = static_cast<std::size_t>(state_.season) - 1;
  const int rs = cfg.weather.region_size;
  const std::uint64_t region =
      static_cast<std::uint64_t>(p.y / rs) * 65536ULL + static_cast<std::uint64_t>(p.x / rs);
  const auto epoch = static_cast<std::uint64_t>(state_.clock / cfg.season_length);
  const std::uint64_t h = hash_mix(state_.map_seed ^ kWeatherStream, region, epoch);
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  const double rain = cfg.weather.rain[s];
  const double snow = cfg.weather.snow[s];
  if (u < rain) return Weather::rain;
  if (u < rain + snow) return Weather::snow;
  return Weather::clear;
}

World new_world(const WorldConfig& cfg, std::uint64_t seed) {
  auto violations = validate(cfg);
  if (!violations.empty()) {
    throw ConfigError(ConfigError::Kind::validation, "invalid config", std::move(violations));
  }
  auto rules = compile_rules(cfg);
  WorldState st;
  st.seed = seed;
  st.map_seed = cfg.seed_policy.mode == SeedPolicy::Mode::fixed ? cfg.seed_policy.map_seed : seed;
  st.rng = Rng(hash_mix(seed, kDynStream));
  st.phase = phase_at(cfg, 0);
  st.season = season_at(cfg, 0);

  const int w = cfg.map_width;
  const int h = cfg.map_height;
  const auto cells = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  st.geography.assign(cells, 0);
  st.occupancy.assign(cells, 0);

  World world(rules, std::move(st));
  auto& state = world.state_;
  Rng map_rng(hash_mix(state.map_seed, kMapStream));

  const auto& terrain = cfg.terrain_spec;
  const int rs = terrain.region_size;
  const int rw = (w + rs - 1) / rs;
  const int rh = (h + rs - 1) / rs;
  std::vector<int> region_geo(static_cast<std::size_t>(rw * rh));
  for (auto& g : region_geo) g = pick_weighted(map_rng, terrain.geographies);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      state.geography[static_cast<std::size_t>(y * w + x)] =
          static_cast<std::uint8_t>(region_geo[static_cast<std::size_t>((y / rs) * rw + x / rs)]);
    }
  }

  for (const auto& p : terrain.placements) {
    const Position pos{p.x, p.y};
    if (world.entity_at(pos)) {
      throw GenerationError("placement collides at (" + std::to_string(p.x) + "," +
                            std::to_string(p.y) + ")");
    }
    world.spawn_entity(cfg.creature_index(p.kind), pos);
  }

  // Per-geography spawn tables in creature order, so draws are stable.
  std::vector<std::vector<std::pair<int, double>>> spawn_tables;
  for (const auto& geo : terrain.geographies) {
    std::vector<std::pair<int, double>> table;
    for (std::size_t k = 0; k < cfg.creature_specs.size(); ++k) {
      auto it = geo.spawn.find(cfg.creature_specs[k].kind);
      if (it != geo.spawn.end() && it->second > 0) table.emplace_back(static_cast<int>(k), it->second);
    }
    spawn_tables.push_back(std::move(table));
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Position pos{x, y};
      if (world.entity_at(pos)) continue;
      const auto& table = spawn_tables[state.geography[static_cast<std::size_t>(y * w + x)]];
      for (const auto& [kind, density] : table) {
        if (map_rng.uniform() < density) {
          world.spawn_entity(kind, pos);
          break;
        }
      }
    }
  }

  Position spawn;
  switch (cfg.agent_spawn.mode) {
    case AgentSpawn::Mode::center:
      spawn = {w / 2, h / 2};
      break;
    case AgentSpawn::Mode::fixed:
      spawn = {cfg.agent_spawn.x, cfg.agent_spawn.y};
      break;
    case AgentSpawn::Mode::random: {
      std::vector<Position> free;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (!world.entity_at({x, y})) free.push_back({x, y});
        }
      }
      if (free.empty()) throw GenerationError("no free cell to spawn the agent");
      spawn = free[static_cast<std::size_t>(map_rng.below(free.size()))];
      break;
    }
  }
  if (cfg.kind == WorldKind::survival) {
    // the agent's cell is reserved; whatever generated there is cleared
    if (const Entity* e = world.entity_at(spawn)) world.remove_entity(e->id);
  }

  for (const auto& kind : terrain.require) {
    const int k = cfg.creature_index(kind);
    const bool present = std::any_of(state.entities.begin(), state.entities.end(),
                                     [k](const Entity& e) { return e.kind == k; });
    if (!present) {
      throw GenerationError("generated map contains no \"" + kind + "\" (seed " +
                            std::to_string(seed) + ")");
    }
  }

  auto& agent = state.agent;
  agent.pos = spawn;
  if (cfg.kind == WorldKind::survival) {
    const auto& attrs = cfg.creature_specs[static_cast<std::size_t>(rules->agent_kind)].attributes;
    agent.hp = attrs.at("hp");
    agent.attack = attrs.at("attack");
    agent.defense = attrs.at("defense");
  }
  agent.satiety = cfg.life_limit;
  agent.thirsty = cfg.life_limit;
  for (const auto& ic : cfg.initial_inventory) {
    const int item = cfg.item_index(ic.item) + 1;
    add_to_backpack(agent, cfg.item_specs[static_cast<std::size_t>(item - 1)], item, ic.count);
  }
  world.refresh_buffs(false);
  return world;
}

}  // namespace eden
