#include "eden/obs.hpp"

#include <algorithm>
#include <stdexcept>

namespace eden {

std::string_view to_string(ObsPreset p) {
  switch (p) {
    case ObsPreset::raw: return "raw";
    case ObsPreset::baseline: return "baseline";
    case ObsPreset::pigs10: return "pigs10";
    case ObsPreset::all10: return "all10";
    case ObsPreset::native: return "native";
  }
  return "?";
}

std::optional<ObsPreset> parse_obs_preset(std::string_view name) {
  for (auto p : {ObsPreset::raw, ObsPreset::baseline, ObsPreset::pigs10, ObsPreset::all10, ObsPreset::native}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

RawLayout raw_layout(const WorldConfig& cfg) {
  RawLayout l;
  l.n_buffs = static_cast<int>(cfg.buff_specs.size());
  l.max_creatures = cfg.observation.max_creatures;
  l.max_materials = cfg.observation.max_materials;
  l.grid_radius = std::max({cfg.vision_day, cfg.vision_night, cfg.vision_torch});
  const int side = 2 * l.grid_radius + 1;
  const std::array<int, 7> lengths{6,
                                   2 * kBackpackSlots,
                                   2 * kEquipSlots,
                                   l.n_buffs,
                                   kCreatureFields * l.max_creatures,
                                   kMaterialFields * l.max_materials,
                                   kCellFields * side * side};
  int offset = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    l.blocks[i] = {offset, lengths[i]};
    offset += lengths[i];
  }
  l.dim = offset;
  l.pig = cfg.creature_index("pig") + 1;
  l.tree = cfg.creature_index("tree") + 1;
  l.river = cfg.creature_index("river") + 1;
  l.meat = cfg.item_index("meat") + 1;
  l.water = cfg.item_index("water") + 1;
  l.wood = cfg.item_index("wood") + 1;
  l.torch = cfg.item_index("torch") + 1;
  return l;
}

RawObservation assemble_raw(const World& world) {
  const auto& cfg = world.config();
  if (cfg.kind != WorldKind::survival) throw std::invalid_argument("raw observation requires a survival world");
  RawObservation obs;
  obs.layout = raw_layout(cfg);
  const auto& l = obs.layout;
  obs.values.assign(static_cast<std::size_t>(l.dim), 0.0);
  const auto& st = world.state();
  const auto& agent = st.agent;
  obs.agent = agent.pos;
  obs.night = st.phase == Phase::night;
  double* v = obs.values.data();

  double* b1 = v + l.blocks[0].offset;
  b1[0] = agent.hp;
  b1[1] = agent.satiety;
  b1[2] = agent.thirsty;
  b1[3] = world.effective_attack();
  b1[4] = world.effective_defense();
  b1[5] = st.last_action_result == ActionResult::success ? 1 : 0;

  double* b2 = v + l.blocks[1].offset;
  for (std::size_t i = 0; i < agent.backpack.size(); ++i) {
    b2[2 * i] = agent.backpack[i].item;
    b2[2 * i + 1] = agent.backpack[i].amount;
  }
  double* b3 = v + l.blocks[2].offset;
  for (std::size_t i = 0; i < agent.equipment.size(); ++i) {
    b3[2 * i] = agent.equipment[i].item;
    b3[2 * i + 1] = agent.equipment[i].amount;
  }
  double* b4 = v + l.blocks[3].offset;
  for (const auto& b : agent.active_buffs) b4[b.buff] = 1;

  const int vision = vision_radius(world);
  const Position a = agent.pos;

  struct Seen {
    int d2;
    EntityId id;
    const Entity* e;
  };
  std::vector<Seen> seen;
  for (const auto& e : st.entities) {
    if (chebyshev(e.pos, a) <= vision) seen.push_back({dist2(e.pos, a), e.id, &e});
  }
  std::sort(seen.begin(), seen.end(), [](const Seen& x, const Seen& y) {
    return x.d2 != y.d2 ? x.d2 < y.d2 : x.id < y.id;
  });
  double* b5 = v + l.blocks[4].offset;
  const auto n5 = std::min(seen.size(), static_cast<std::size_t>(l.max_creatures));
  for (std::size_t i = 0; i < n5; ++i) {
    const Entity& e = *seen[i].e;
    const auto& kind = world.rules().kinds[static_cast<std::size_t>(e.kind)];
    double* row = b5 + kCreatureFields * i;
    row[0] = e.kind + 1;
    row[1] = e.pos.x;
    row[2] = e.pos.y;
    row[3] = kind.hp_attr >= 0 ? e.attributes[static_cast<std::size_t>(kind.hp_attr)] : 0;
  }

  struct Stack {
    int d2;
    Position p;
    int order;
    int item;
  };
  std::vector<Stack> stacks;
  for (const auto& [cell, list] : st.ground) {
    const Position p{cell % world.width(), cell / world.width()};
    if (chebyshev(p, a) > vision) continue;
    for (std::size_t i = 0; i < list.size(); ++i) {
      stacks.push_back({dist2(p, a), p, static_cast<int>(i), list[i].item});
    }
  }
  std::sort(stacks.begin(), stacks.end(), [](const Stack& x, const Stack& y) {
    if (x.d2 != y.d2) return x.d2 < y.d2;
    if (x.p.y != y.p.y) return x.p.y < y.p.y;
    if (x.p.x != y.p.x) return x.p.x < y.p.x;
    return x.order < y.order;
  });
  double* b6 = v + l.blocks[5].offset;
  const auto n6 = std::min(stacks.size(), static_cast<std::size_t>(l.max_materials));
  for (std::size_t i = 0; i < n6; ++i) {
    double* row = b6 + kMaterialFields * i;
    row[0] = stacks[i].item;
    row[1] = stacks[i].p.x;
    row[2] = stacks[i].p.y;
  }

  double* b7 = v + l.blocks[6].offset;
  const int r = l.grid_radius;
  const int side = 2 * r + 1;
  const int reach = std::min(vision, r);
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const Position p{a.x + dx, a.y + dy};
      if (!world.in_map(p)) continue;
      double* row = b7 + kCellFields * ((dy + r) * side + (dx + r));
      row[0] = static_cast<double>(world.weather_at(p));
      row[1] = world.geography_at(p) + 1;
    }
  }
  return obs;
}

namespace {

int wrapped_extra_slots(ObsPreset p) {
  switch (p) {
    case ObsPreset::baseline: return 0;
    case ObsPreset::pigs10: return 9;
    case ObsPreset::all10: return 9;
    default: return 0;
  }
}

// Emits the wrapped layout. With raw == nullptr only names are produced.
class Writer {
 public:
  Writer(std::vector<double>* values, std::vector<LayoutField>* fields) : values_(values), fields_(fields) {}

  template <class NameFn>
  void put(double v, NameFn&& name) {
    if (values_) values_->push_back(v);
    if (fields_) fields_->push_back({offset_, name()});
    ++offset_;
  }

 private:
  std::vector<double>* values_;
  std::vector<LayoutField>* fields_;
  int offset_ = 0;
};

struct Target {
  bool present = false;
  int dx = 0;
  int dy = 0;
};

// k-th (0-based) entry of `type` in a (type, x, y, ...) block, in block order.
Target nth_of(std::span<const double> block, int width, int type, int k, Position agent) {
  if (type <= 0) return {};
  const auto rows = block.size() / static_cast<std::size_t>(width);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = block.data() + i * static_cast<std::size_t>(width);
    if (static_cast<int>(row[0]) != type) continue;
    if (k-- == 0) {
      return {true, static_cast<int>(row[1]) - agent.x, static_cast<int>(row[2]) - agent.y};
    }
  }
  return {};
}

void emit_wrapped(const RawObservation* raw, const RawLayout& l, ObsPreset preset, Writer& w) {
  std::span<const double> b1, b2, b3, b5, b6, b7;
  Position a;
  if (raw) {
    b1 = raw->block(0);
    b2 = raw->block(1);
    b3 = raw->block(2);
    b5 = raw->block(4);
    b6 = raw->block(5);
    b7 = raw->block(6);
    a = raw->agent;
  }
  const auto at = [](std::span<const double> s, std::size_t i) { return s.empty() ? 0.0 : s[i]; };

  static constexpr std::array<const char*, 6> kAgent{"hp", "satiety", "thirsty", "attack", "defense", "action_result"};
  for (std::size_t i = 0; i < kAgent.size(); ++i) w.put(at(b1, i), [&] { return std::string("agent.") + kAgent[i]; });

  const std::array<std::pair<const char*, int>, 4> materials{
      {{"meat", l.meat}, {"water", l.water}, {"wood", l.wood}, {"torch", l.torch}}};
  for (const auto& [label, item] : materials) {
    double count = 0;
    if (raw && item > 0) {
      for (std::size_t i = 0; i < static_cast<std::size_t>(kBackpackSlots); ++i) {
        if (static_cast<int>(b2[2 * i]) != item) continue;
        // stackable slots carry a count, equipment slots carry durability
        count += label == std::string_view("torch") ? 1 : b2[2 * i + 1];
      }
    }
    w.put(count, [&] { return std::string("backpack.") + label; });
  }
  w.put(raw && l.torch > 0 && static_cast<int>(b3[0]) == l.torch ? 1 : 0, [] { return std::string("equipped.torch"); });

  const auto slot = [&](std::span<const double> block, int width, int type, const char* what, int k) {
    const Target t = raw ? nth_of(block, width, type, k, a) : Target{};
    const auto label = [&](const char* field) { return std::string(what) + "[" + std::to_string(k) + "]." + field; };
    w.put(t.present ? 1 : 0, [&] { return label("present"); });
    w.put(t.dx, [&] { return label("dx"); });
    w.put(t.dy, [&] { return label("dy"); });
  };

  slot(b5, kCreatureFields, l.pig, "pig", 0);
  slot(b5, kCreatureFields, l.tree, "tree", 0);
  slot(b5, kCreatureFields, l.river, "river", 0);
  for (const auto& [what, item] : materials) slot(b6, kMaterialFields, item, what, 0);

  const int r = l.grid_radius;
  const int side = 2 * r + 1;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      const auto cell = [dx, dy](const char* field) {
        return "cell[" + std::to_string(dx) + "," + std::to_string(dy) + "]." + field;
      };
      double geo = 0, weather = 0, occupant = 0, smallest = 0, n_stacks = 0;
      if (raw) {
        const auto base = static_cast<std::size_t>(kCellFields * ((dy + r) * side + (dx + r)));
        weather = b7[base];
        geo = b7[base + 1];
        const Position p{a.x + dx, a.y + dy};
        for (std::size_t i = 0; i < b5.size(); i += kCreatureFields) {
          if (b5[i] != 0 && static_cast<int>(b5[i + 1]) == p.x && static_cast<int>(b5[i + 2]) == p.y) {
            occupant = b5[i];
            break;
          }
        }
        for (std::size_t i = 0; i < b6.size(); i += kMaterialFields) {
          if (b6[i] == 0 || static_cast<int>(b6[i + 1]) != p.x || static_cast<int>(b6[i + 2]) != p.y) continue;
          smallest = smallest == 0 ? b6[i] : std::min(smallest, b6[i]);
          n_stacks += 1;
        }
      }
      w.put(geo, [&] { return cell("geography"); });
      w.put(weather, [&] { return cell("weather"); });
      w.put(occupant, [&] { return cell("occupant"); });
      w.put(smallest, [&] { return cell("ground_min_item"); });
      w.put(n_stacks, [&] { return cell("ground_stacks"); });
    }
  }
  w.put(raw && raw->night ? 1 : 0, [] { return std::string("is_night"); });

  const int extra = wrapped_extra_slots(preset);
  if (preset == ObsPreset::pigs10 || preset == ObsPreset::all10) {
    for (int k = 1; k <= extra; ++k) slot(b5, kCreatureFields, l.pig, "pig", k);
  }
  if (preset == ObsPreset::all10) {
    for (int k = 1; k <= extra; ++k) slot(b5, kCreatureFields, l.tree, "tree", k);
    for (int k = 1; k <= extra; ++k) slot(b5, kCreatureFields, l.river, "river", k);
    for (const auto& [what, item] : materials) {
      for (int k = 1; k <= 3; ++k) slot(b6, kMaterialFields, item, what, k);
    }
  }
}

bool is_wrapped(ObsPreset p) {
  return p == ObsPreset::baseline || p == ObsPreset::pigs10 || p == ObsPreset::all10;
}

}  // namespace

WrappedObservation wrap(const RawObservation& raw, ObsPreset preset) {
  if (!is_wrapped(preset)) throw std::invalid_argument("wrap needs baseline, pigs10 or all10");
  WrappedObservation out;
  out.preset = preset;
  out.values.reserve(195);
  Writer w(&out.values, nullptr);
  emit_wrapped(&raw, raw.layout, preset, w);
  return out;
}

int dimension(const WorldConfig& cfg, ObsPreset preset) {
  if (preset == ObsPreset::native) {
    if (cfg.kind != WorldKind::navigation) throw std::invalid_argument("native observation is navigation-only");
    return 2;
  }
  if (cfg.kind != WorldKind::survival) {
    throw std::invalid_argument(std::string("preset ") + std::string(to_string(preset)) + " needs a survival world");
  }
  if (preset == ObsPreset::raw) return raw_layout(cfg).dim;
  switch (preset) {
    case ObsPreset::baseline: return 78;
    case ObsPreset::pigs10: return 78 + 9 * 3;
    default: return 78 + 9 * 3 + 30 * 3;
  }
}

std::vector<LayoutField> layout_table(const WorldConfig& cfg, ObsPreset preset) {
  std::vector<LayoutField> fields;
  if (preset == ObsPreset::native) {
    dimension(cfg, preset);
    return {{0, "agent.x"}, {1, "agent.y"}};
  }
  const RawLayout l = raw_layout(cfg);
  if (preset == ObsPreset::raw) {
    static constexpr std::array<const char*, 7> kBlocks{"agent", "backpack", "equipment", "buffs",
                                                        "creatures", "materials", "cells"};
    for (std::size_t i = 0; i < kBlocks.size(); ++i) {
      for (int j = 0; j < l.blocks[i].length; ++j) {
        fields.push_back({l.blocks[i].offset + j, std::string(kBlocks[i]) + "[" + std::to_string(j) + "]"});
      }
    }
    return fields;
  }
  dimension(cfg, preset);
  Writer w(nullptr, &fields);
  emit_wrapped(nullptr, l, preset, w);
  return fields;
}

}  // namespace eden
