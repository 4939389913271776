#include "eden/act.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>

namespace eden {

namespace {

AbstractAction make(Verb v, std::string name, int k = 0) { return {v, k, std::move(name)}; }

std::vector<AbstractAction> attack_pigs(int n) {
  std::vector<AbstractAction> out;
  for (int k = 1; k <= n; ++k) out.push_back(make(Verb::attack_pig, "attack_pig_" + std::to_string(k), k));
  return out;
}

std::vector<AbstractAction> move_pigs(int n) {
  std::vector<AbstractAction> out;
  for (int k = 1; k <= n; ++k) out.push_back(make(Verb::move_to_pig_k, "move_to_pig_" + std::to_string(k), k));
  return out;
}

std::vector<AbstractAction> concat(std::initializer_list<std::vector<AbstractAction>> parts) {
  std::vector<AbstractAction> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const AbstractAction kAttack = make(Verb::attack_nearest, "attack_nearest");
const AbstractAction kCollect = make(Verb::collect_auto, "collect_auto");
const AbstractAction kCollectRiver = make(Verb::collect_river, "collect_river");
const AbstractAction kCollectTree = make(Verb::collect_tree, "collect_tree");
const AbstractAction kPickup = make(Verb::pickup_auto, "pickup_auto");
const AbstractAction kPickupMeat = make(Verb::pickup_meat, "pickup_meat");
const AbstractAction kPickupWater = make(Verb::pickup_water, "pickup_water");
const AbstractAction kPickupWood = make(Verb::pickup_wood, "pickup_wood");
const AbstractAction kConsume = make(Verb::consume_auto, "consume_auto");
const AbstractAction kConsumeMeat = make(Verb::consume_meat, "consume_meat");
const AbstractAction kConsumeWater = make(Verb::consume_water, "consume_water");
const AbstractAction kEquip = make(Verb::equip_torch, "equip_torch");
const AbstractAction kSynth = make(Verb::synthesize_torch, "synthesize_torch");
const AbstractAction kDiscard = make(Verb::discard_torch, "discard_torch");
const AbstractAction kMove = make(Verb::move_to_pig, "move_to_pig");
const AbstractAction kIdle = make(Verb::idle, "idle");

std::vector<AbstractAction> build(ActPreset p) {
  switch (p) {
    case ActPreset::baseline9:
      return {kAttack, kCollect, kPickup, kConsume, kEquip, kSynth, kDiscard, kMove, kIdle};
    case ActPreset::pig3:
      return concat({attack_pigs(3), {kCollect, kPickup, kConsume, kEquip, kSynth, kDiscard}, move_pigs(3), {kIdle}});
    case ActPreset::pig5:
      return concat({attack_pigs(5), {kCollect, kPickup, kConsume, kEquip, kSynth, kDiscard}, move_pigs(5), {kIdle}});
    case ActPreset::expand_consume:
      return {kAttack, kCollect, kPickup, kConsumeMeat, kConsumeWater, kEquip, kSynth, kDiscard, kMove, kIdle};
    case ActPreset::expand_pickup:
      return {kAttack, kCollect, kPickupMeat, kPickupWater, kPickupWood, kConsume, kEquip, kSynth, kDiscard, kMove, kIdle};
    case ActPreset::expand_collect:
      return {kAttack, kCollectRiver, kCollectTree, kPickup, kConsume, kEquip, kSynth, kDiscard, kMove, kIdle};
    case ActPreset::expand_all:
      return concat({{kAttack},
                     attack_pigs(5),
                     {kCollect, kCollectRiver, kCollectTree, kPickup, kPickupMeat, kPickupWater, kPickupWood, kConsume,
                      kConsumeMeat, kConsumeWater, kEquip, kSynth, kDiscard, kMove},
                     move_pigs(5),
                     {kIdle}});
  }
  throw std::invalid_argument("unknown action preset");
}

int sign(int v) { return (v > 0) - (v < 0); }

DecodedAction idle_untargeted() { return {{ActionId::idle, 0, 0}, DecodeNote::untargeted}; }

// Per axis, cover the distance beyond reach, capped at the move radius. An
// occupied destination falls back to axis-only and unit steps in turn.
DecodedAction approach(const World& world, Position target) {
  const Position a = world.state().agent.pos;
  const int reach = world.config().reach;
  const int radius = world.effective_move_radius();
  const auto axis = [&](int d) { return sign(d) * std::min(std::max(std::abs(d) - reach, 0), radius); };
  const int ax = axis(target.x - a.x);
  const int ay = axis(target.y - a.y);
  const int sx = sign(ax);
  const int sy = sign(ay);
  const std::array<Position, 6> offsets{{{ax, ay}, {ax, 0}, {0, ay}, {sx, sy}, {sx, 0}, {0, sy}}};
  for (const Position o : offsets) {
    if (o.x == 0 && o.y == 0) continue;
    const Position dest{std::clamp(a.x + o.x, 0, world.width() - 1), std::clamp(a.y + o.y, 0, world.height() - 1)};
    if (dest != a && !world.entity_at(dest)) return {{ActionId::move, o.x, o.y}, DecodeNote::approach};
  }
  return {{ActionId::move, ax, ay}, DecodeNote::approach};
}

DecodedAction interact(const World& world, ActionId id, const Entity* target) {
  if (!target) return idle_untargeted();
  if (chebyshev(world.state().agent.pos, target->pos) > world.config().reach) return approach(world, target->pos);
  return {{id, target->pos.x, target->pos.y}, DecodeNote::direct};
}

const Entity* nth(const std::vector<const Entity*>& v, int k) {
  return k >= 1 && static_cast<std::size_t>(k) <= v.size() ? v[static_cast<std::size_t>(k - 1)] : nullptr;
}

int ground_in_reach(const World& world, int item) {
  if (item <= 0) return 0;
  const Position a = world.state().agent.pos;
  const int reach = world.config().reach;
  int n = 0;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const Position p{a.x + dx, a.y + dy};
      if (!world.in_map(p)) continue;
      if (const auto* stacks = world.ground_at(p)) {
        for (const auto& s : *stacks) {
          if (s.item == item) n += s.count;
        }
      }
    }
  }
  return n;
}

DecodedAction pick_item(const World& world, int item) {
  const int n = ground_in_reach(world, item);
  if (n == 0) return idle_untargeted();
  return {{ActionId::pick, item, n}, DecodeNote::direct};
}

DecodedAction item_command(ActionId id, int item) {
  if (item <= 0) return idle_untargeted();
  return {{id, item, 1}, DecodeNote::direct};
}

int kind_of(const World& world, std::string_view name) { return world.config().creature_index(name); }

const Entity* nearest_of(const World& world, std::string_view name) {
  const int k = kind_of(world, name);
  if (k < 0) return nullptr;
  auto v = visible_entities(world, k);
  return v.empty() ? nullptr : v.front();
}

DecodedAction explore(const World& world) {
  static constexpr std::array<std::pair<int, int>, 8> kDirs{
      {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
  const auto& st = world.state();
  const std::uint64_t h = hash_mix(st.seed, static_cast<std::uint64_t>(st.clock),
                                   static_cast<std::uint64_t>(st.agent.pos.x), static_cast<std::uint64_t>(st.agent.pos.y));
  const auto [dx, dy] = kDirs[h % kDirs.size()];
  const int r = world.effective_move_radius();
  return {{ActionId::move, dx * r, dy * r}, DecodeNote::untargeted};
}

DecodedAction move_toward(const World& world, const Entity* pig) {
  if (!pig) return idle_untargeted();
  return approach(world, pig->pos);
}

}  // namespace

std::string_view to_string(ActPreset p) {
  switch (p) {
    case ActPreset::baseline9: return "baseline9";
    case ActPreset::pig3: return "pig3";
    case ActPreset::pig5: return "pig5";
    case ActPreset::expand_consume: return "expand_consume";
    case ActPreset::expand_pickup: return "expand_pickup";
    case ActPreset::expand_collect: return "expand_collect";
    case ActPreset::expand_all: return "expand_all";
  }
  return "?";
}

std::vector<ActPreset> all_act_presets() {
  return {ActPreset::baseline9,      ActPreset::pig3,           ActPreset::pig5,      ActPreset::expand_consume,
          ActPreset::expand_pickup, ActPreset::expand_collect, ActPreset::expand_all};
}

std::optional<ActPreset> parse_act_preset(std::string_view name) {
  for (auto p : all_act_presets()) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view to_string(DecodeNote n) {
  switch (n) {
    case DecodeNote::direct: return "direct";
    case DecodeNote::approach: return "approach";
    case DecodeNote::untargeted: return "untargeted";
  }
  return "?";
}

const std::vector<AbstractAction>& actions(ActPreset preset) {
  static const std::array<std::vector<AbstractAction>, 7> table = [] {
    std::array<std::vector<AbstractAction>, 7> t;
    for (auto p : all_act_presets()) t[static_cast<std::size_t>(p)] = build(p);
    return t;
  }();
  return table.at(static_cast<std::size_t>(preset));
}

int action_count(ActPreset preset) { return static_cast<int>(actions(preset).size()); }

std::vector<CatalogEntry> preset_catalog() {
  std::vector<CatalogEntry> out;
  for (auto p : all_act_presets()) {
    CatalogEntry e{p, {}};
    for (const auto& a : actions(p)) e.names.push_back(a.name);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<const Entity*> visible_entities(const World& world, int kind) {
  const auto& st = world.state();
  const Position a = st.agent.pos;
  const int vision = vision_radius(world);
  std::vector<const Entity*> out;
  for (const auto& e : st.entities) {
    if (kind >= 0 ? e.kind != kind : !world.rules().kinds[static_cast<std::size_t>(e.kind)].attackable()) continue;
    if (chebyshev(e.pos, a) <= vision) out.push_back(&e);
  }
  std::sort(out.begin(), out.end(), [a](const Entity* l, const Entity* r) {
    const int dl = dist2(l->pos, a);
    const int dr = dist2(r->pos, a);
    return dl != dr ? dl < dr : l->id < r->id;
  });
  return out;
}

DecodedAction decode(ActPreset preset, int index, const World& world) {
  const auto& list = actions(preset);
  if (index < 0 || index >= static_cast<int>(list.size())) {
    throw std::out_of_range("action index " + std::to_string(index) + " outside [0, " +
                            std::to_string(list.size()) + ")");
  }
  const AbstractAction& act = list[static_cast<std::size_t>(index)];
  const auto item = [&](std::string_view name) { return world.item_id(name); };
  const auto& agent = world.state().agent;

  switch (act.verb) {
    case Verb::attack_nearest: {
      auto v = visible_entities(world, -1);
      return interact(world, ActionId::attack, v.empty() ? nullptr : v.front());
    }
    case Verb::attack_pig: {
      const int pig = kind_of(world, "pig");
      return interact(world, ActionId::attack, pig < 0 ? nullptr : nth(visible_entities(world, pig), act.k));
    }
    case Verb::collect_auto: {
      const int water = item("water");
      const int wood = item("wood");
      const int nw = water > 0 ? world.backpack_count(water) : 0;
      const int nd = wood > 0 ? world.backpack_count(wood) : 0;
      const char* first = nw <= nd ? "river" : "tree";
      const char* second = nw <= nd ? "tree" : "river";
      const Entity* t = nearest_of(world, first);
      if (!t) t = nearest_of(world, second);
      return interact(world, ActionId::collect, t);
    }
    case Verb::collect_river: return interact(world, ActionId::collect, nearest_of(world, "river"));
    case Verb::collect_tree: return interact(world, ActionId::collect, nearest_of(world, "tree"));
    case Verb::pickup_auto: {
      int best = 0;
      int best_count = 0;
      for (const char* name : {"meat", "water", "wood"}) {
        const int id = item(name);
        if (id <= 0 || ground_in_reach(world, id) == 0) continue;
        const int held = world.backpack_count(id);
        if (best == 0 || held < best_count) {
          best = id;
          best_count = held;
        }
      }
      return best ? pick_item(world, best) : idle_untargeted();
    }
    case Verb::pickup_meat: return pick_item(world, item("meat"));
    case Verb::pickup_water: return pick_item(world, item("water"));
    case Verb::pickup_wood: return pick_item(world, item("wood"));
    case Verb::consume_auto:
      return item_command(ActionId::consume, agent.satiety <= agent.thirsty ? item("meat") : item("water"));
    case Verb::consume_meat: return item_command(ActionId::consume, item("meat"));
    case Verb::consume_water: return item_command(ActionId::consume, item("water"));
    case Verb::equip_torch: {
      const int torch = item("torch");
      if (torch <= 0) return idle_untargeted();
      return {{ActionId::equip, torch, 0}, DecodeNote::direct};
    }
    case Verb::synthesize_torch: return item_command(ActionId::synthesize, item("torch"));
    case Verb::discard_torch: return item_command(ActionId::discard, item("torch"));
    case Verb::move_to_pig: {
      const Entity* pig = nearest_of(world, "pig");
      return pig ? approach(world, pig->pos) : explore(world);
    }
    case Verb::move_to_pig_k: {
      const int pig = kind_of(world, "pig");
      return move_toward(world, pig < 0 ? nullptr : nth(visible_entities(world, pig), act.k));
    }
    case Verb::idle: return {{ActionId::idle, 0, 0}, DecodeNote::direct};
  }
  return idle_untargeted();
}

}  // namespace eden
