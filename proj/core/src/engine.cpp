#include "eden/engine.hpp"

#include <algorithm>
#include <array>

namespace eden {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

int clip(int v, int r) { return std::clamp(v, -r, r); }

}  // namespace

std::string_view to_string(ActionId v) {
  switch (v) {
    case ActionId::attack: return "attack";
    case ActionId::collect: return "collect";
    case ActionId::pick: return "pick";
    case ActionId::consume: return "consume";
    case ActionId::synthesize: return "synthesize";
    case ActionId::discard: return "discard";
    case ActionId::equip: return "equip";
    case ActionId::move: return "move";
    case ActionId::idle: return "idle";
  }
  return "?";
}

std::optional<ActionId> parse_action_id(std::string_view name) {
  for (int i = 0; i < kActionIdCount; ++i) {
    const auto id = static_cast<ActionId>(i);
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::string_view to_string(EventType v) {
  switch (v) {
    case EventType::move: return "move";
    case EventType::attack: return "attack";
    case EventType::kill: return "kill";
    case EventType::collect: return "collect";
    case EventType::deplete: return "deplete";
    case EventType::spawn: return "spawn";
    case EventType::pickup: return "pickup";
    case EventType::consume: return "consume";
    case EventType::synthesize: return "synthesize";
    case EventType::ingredient: return "ingredient";
    case EventType::discard: return "discard";
    case EventType::equip: return "equip";
    case EventType::unequip: return "unequip";
    case EventType::item_break: return "item_break";
    case EventType::damage: return "damage";
    case EventType::death: return "death";
    case EventType::horizon: return "horizon";
  }
  return "?";
}

std::string_view to_string(FailureReason v) {
  switch (v) {
    case FailureReason::none: return "none";
    case FailureReason::malformed: return "malformed";
    case FailureReason::out_of_map: return "out_of_map";
    case FailureReason::no_target: return "no_target";
    case FailureReason::out_of_reach: return "out_of_reach";
    case FailureReason::not_attackable: return "not_attackable";
    case FailureReason::not_collectible: return "not_collectible";
    case FailureReason::blocked: return "blocked";
    case FailureReason::not_held: return "not_held";
    case FailureReason::not_available: return "not_available";
    case FailureReason::backpack_full: return "backpack_full";
    case FailureReason::not_consumable: return "not_consumable";
    case FailureReason::no_recipe: return "no_recipe";
    case FailureReason::not_equipable: return "not_equipable";
    case FailureReason::slot_mismatch: return "slot_mismatch";
  }
  return "?";
}

std::string_view to_string(DeathCause v) {
  switch (v) {
    case DeathCause::none: return "none";
    case DeathCause::starvation: return "starvation";
    case DeathCause::dehydration: return "dehydration";
    case DeathCause::killed: return "killed";
  }
  return "?";
}

std::string_view to_string(Weather w) {
  switch (w) {
    case Weather::clear: return "clear";
    case Weather::rain: return "rain";
    case Weather::snow: return "snow";
  }
  return "?";
}

bool StepOutcome::has(EventType type) const {
  return std::any_of(events.begin(), events.end(), [type](const Event& e) { return e.type == type; });
}

const Entity* World::entity(EntityId id) const {
  auto it = std::lower_bound(state_.entities.begin(), state_.entities.end(), id,
                             [](const Entity& e, EntityId v) { return e.id < v; });
  return it != state_.entities.end() && it->id == id ? &*it : nullptr;
}

Entity* World::entity(EntityId id) {
  return const_cast<Entity*>(std::as_const(*this).entity(id));
}

const Entity* World::entity_at(Position p) const {
  if (!in_map(p)) return nullptr;
  const EntityId id = state_.occupancy[static_cast<std::size_t>(cell_index(p))];
  return id ? entity(id) : nullptr;
}

const std::vector<GroundStack>* World::ground_at(Position p) const {
  auto it = state_.ground.find(cell_index(p));
  return it == state_.ground.end() ? nullptr : &it->second;
}

EntityId World::spawn_entity(int kind, Position p) {
  const auto& k = rules_->kinds[static_cast<std::size_t>(kind)];
  Entity e;
  e.id = state_.next_id++;
  e.kind = kind;
  e.pos = p;
  e.attributes = k.initial_attributes;
  e.remaining_collects = k.collect_capacity;
  state_.occupancy[static_cast<std::size_t>(cell_index(p))] = e.id;
  state_.entities.push_back(std::move(e));
  return state_.entities.back().id;
}

void World::remove_entity(EntityId id) {
  auto it = std::lower_bound(state_.entities.begin(), state_.entities.end(), id,
                             [](const Entity& e, EntityId v) { return e.id < v; });
  if (it == state_.entities.end() || it->id != id) return;
  state_.occupancy[static_cast<std::size_t>(cell_index(it->pos))] = 0;
  state_.entities.erase(it);
}

void World::move_entity(Entity& e, Position to) {
  state_.occupancy[static_cast<std::size_t>(cell_index(e.pos))] = 0;
  e.pos = to;
  state_.occupancy[static_cast<std::size_t>(cell_index(to))] = e.id;
}

void World::drop_items(Position p, int item, int count, int durability, std::vector<Event>& events) {
  if (count <= 0) return;
  const auto& spec = item_spec(item);
  auto& stacks = state_.ground[cell_index(p)];
  if (spec.stackable) {
    auto it = std::find_if(stacks.begin(), stacks.end(), [item](const GroundStack& s) { return s.item == item; });
    if (it != stacks.end()) {
      it->count += count;
    } else {
      stacks.push_back({item, count, 0});
    }
  } else {
    for (int i = 0; i < count; ++i) stacks.push_back({item, 1, durability > 0 ? durability : spec.durability});
  }
  Event ev;
  ev.type = EventType::spawn;
  ev.item = item;
  ev.count = count;
  ev.pos = p;
  events.push_back(ev);
}

int World::backpack_count(int item) const {
  const bool stackable = item_spec(item).stackable;
  int n = 0;
  for (const auto& s : state_.agent.backpack) {
    if (s.item == item) n += stackable ? s.amount : 1;
  }
  return n;
}

int World::equipped_item(EquipSlot slot) const {
  if (slot == EquipSlot::none) return 0;
  return state_.agent.equipment[static_cast<std::size_t>(slot) - 1].item;
}

double World::hp_cap() const {
  if (rules_->agent_kind < 0) return 0;
  const auto& attrs = rules_->cfg.creature_specs[static_cast<std::size_t>(rules_->agent_kind)].attributes;
  auto it = attrs.find("hp");
  return it == attrs.end() ? 0 : it->second;
}

int vision_radius(const World& world) {
  const auto& cfg = world.config();
  int radius = cfg.vision_day;
  for (const auto& inst : world.state().agent.active_buffs) {
    const auto& vision = cfg.buff_specs[static_cast<std::size_t>(inst.buff)].effect.vision;
    if (!vision) continue;
    switch (*vision) {
      case VisionMode::day: radius = cfg.vision_day; break;
      case VisionMode::night: radius = cfg.vision_night; break;
      case VisionMode::torch: radius = cfg.vision_torch; break;
    }
  }
  return radius;
}

Resolution resolve_move(World& world, int ox, int oy) {
  Resolution r;
  auto& agent = world.mutable_state().agent;
  const int radius = world.effective_move_radius();
  const Position dest{std::clamp(agent.pos.x + clip(ox, radius), 0, world.width() - 1),
                      std::clamp(agent.pos.y + clip(oy, radius), 0, world.height() - 1)};
  if (dest == agent.pos) return r;
  if (world.entity_at(dest)) {
    r.failure = FailureReason::blocked;
    return r;
  }
  agent.pos = dest;
  Event ev;
  ev.type = EventType::move;
  ev.pos = dest;
  r.events.push_back(ev);
  return r;
}

Resolution resolve_attack(World& world, Position target) {
  Resolution r;
  if (!world.in_map(target)) {
    r.failure = FailureReason::out_of_map;
    return r;
  }
  if (chebyshev(world.state().agent.pos, target) > world.config().reach) {
    r.failure = FailureReason::out_of_reach;
    return r;
  }
  const Entity* found = world.entity_at(target);
  if (!found) {
    r.failure = FailureReason::no_target;
    return r;
  }
  const auto& kind = world.rules().kinds[static_cast<std::size_t>(found->kind)];
  if (!kind.attackable()) {
    r.failure = FailureReason::not_attackable;
    return r;
  }
  Entity& e = *world.entity(found->id);
  auto& hp = e.attributes[static_cast<std::size_t>(kind.hp_attr)];
  const double dealt = std::min(hp, std::max(0.0, world.effective_attack()));
  hp -= dealt;
  if (kind.behavior == Behavior::aggressive) e.aggro = true;
  Event hit;
  hit.type = EventType::attack;
  hit.entity = e.id;
  hit.kind = e.kind;
  hit.value = dealt;
  hit.pos = target;
  r.events.push_back(hit);
  if (hp <= 0) {
    hp = 0;
    Event kill = hit;
    kill.type = EventType::kill;
    kill.value = 0;
    r.events.push_back(kill);
    world.remove_entity(e.id);
    for (const auto& [item, count] : kind.kill_drops) world.drop_items(target, item, count, 0, r.events);
  }
  return r;
}

Resolution resolve_collect(World& world, Position target) {
  Resolution r;
  if (!world.in_map(target)) {
    r.failure = FailureReason::out_of_map;
    return r;
  }
  if (chebyshev(world.state().agent.pos, target) > world.config().reach) {
    r.failure = FailureReason::out_of_reach;
    return r;
  }
  const Entity* found = world.entity_at(target);
  if (!found) {
    r.failure = FailureReason::no_target;
    return r;
  }
  const auto& kind = world.rules().kinds[static_cast<std::size_t>(found->kind)];
  if (kind.collect_drops.empty() || (found->remaining_collects && *found->remaining_collects <= 0)) {
    r.failure = FailureReason::not_collectible;
    return r;
  }
  Entity& e = *world.entity(found->id);
  Event ev;
  ev.type = EventType::collect;
  ev.entity = e.id;
  ev.kind = e.kind;
  ev.pos = target;
  r.events.push_back(ev);
  for (const auto& [item, count] : kind.collect_drops) world.drop_items(target, item, count, 0, r.events);
  if (e.remaining_collects && --*e.remaining_collects == 0) {
    Event dep = ev;
    dep.type = EventType::deplete;
    r.events.push_back(dep);
    world.remove_entity(e.id);
  }
  return r;
}

namespace {

bool free_for_creature(const World& world, Position p) {
  return world.in_map(p) && !world.entity_at(p) && !(p == world.state().agent.pos);
}

// One unit step along (sx, sy), falling back to each axis alone.
bool step_creature(World& world, Entity& e, int sx, int sy) {
  const std::array<std::pair<int, int>, 3> options{{{sx, sy}, {sx, 0}, {0, sy}}};
  for (const auto& [dx, dy] : options) {
    if (dx == 0 && dy == 0) continue;
    const Position to{e.pos.x + dx, e.pos.y + dy};
    if (free_for_creature(world, to)) {
      world.move_entity(e, to);
      return true;
    }
  }
  return false;
}

void run_creatures(World& world, std::vector<Event>& events) {
  auto& st = world.mutable_state();
  std::vector<EntityId> ids;
  ids.reserve(st.entities.size());
  for (const auto& e : st.entities) {
    const auto b = world.rules().kinds[static_cast<std::size_t>(e.kind)].behavior;
    if (b != Behavior::static_) ids.push_back(e.id);
  }
  for (EntityId id : ids) {
    Entity* e = world.entity(id);
    if (!e) continue;
    const auto& kind = world.rules().kinds[static_cast<std::size_t>(e->kind)];
    const Position agent = st.agent.pos;
    if (kind.behavior == Behavior::flee) {
      if (chebyshev(e->pos, agent) > kind.flee_radius) {
        e->move_budget = 0;
        continue;
      }
      e->move_budget += kind.move_speed;
      while (e->move_budget >= 1) {
        e->move_budget -= 1;
        if (!step_creature(world, *e, sign(e->pos.x - agent.x), sign(e->pos.y - agent.y))) break;
      }
    } else if (kind.behavior == Behavior::aggressive) {
      if (!e->aggro && chebyshev(e->pos, agent) > kind.aggro_radius) {
        e->move_budget = 0;
        continue;
      }
      e->move_budget += kind.move_speed;
      while (e->move_budget >= 1) {
        e->move_budget -= 1;
        if (chebyshev(e->pos, agent) <= 1) {
          const double atk = kind.attack_attr >= 0 ? e->attributes[static_cast<std::size_t>(kind.attack_attr)] : 0;
          const double dmg = std::min(st.agent.hp, std::max(0.0, atk - world.effective_defense()));
          st.agent.hp -= dmg;
          Event ev;
          ev.type = EventType::damage;
          ev.entity = e->id;
          ev.kind = e->kind;
          ev.value = dmg;
          ev.pos = agent;
          events.push_back(ev);
          break;
        }
        if (!step_creature(world, *e, sign(agent.x - e->pos.x), sign(agent.y - e->pos.y))) break;
      }
    }
  }
}

void tick_durability(World& world, std::vector<Event>& events) {
  const auto& cfg = world.config();
  auto& agent = world.mutable_state().agent;
  for (auto& slot : agent.equipment) {
    if (slot.item == 0) continue;
    const std::string& name = world.item_spec(slot.item).id;
    const bool in_use = std::any_of(agent.active_buffs.begin(), agent.active_buffs.end(), [&](const BuffInstance& b) {
      const auto& eq = cfg.buff_specs[static_cast<std::size_t>(b.buff)].when.equipped;
      return eq && *eq == name;
    });
    if (!in_use) continue;
    if (--slot.amount <= 0) {
      Event ev;
      ev.type = EventType::item_break;
      ev.item = slot.item;
      ev.count = 1;
      ev.pos = agent.pos;
      events.push_back(ev);
      slot = {};
    }
  }
}

Resolution resolve_command(World& world, const ActionCommand& cmd) {
  switch (cmd.id) {
    case ActionId::attack: return resolve_attack(world, {cmd.p1, cmd.p2});
    case ActionId::collect: return resolve_collect(world, {cmd.p1, cmd.p2});
    case ActionId::move: return resolve_move(world, cmd.p1, cmd.p2);
    case ActionId::idle: return {};
    case ActionId::pick:
    case ActionId::consume:
    case ActionId::synthesize:
    case ActionId::discard:
    case ActionId::equip: return resolve_inventory(world, cmd);
  }
  Resolution r;
  r.failure = FailureReason::malformed;
  return r;
}

}  // namespace

StepOutcome step(World& world, const ActionCommand& cmd) {
  auto& st = world.mutable_state();
  if (st.done) throw ContractViolation("step called on a finished world");
  if (world.config().kind != WorldKind::survival) {
    throw ContractViolation("engine step requires a survival world");
  }
  const auto& cfg = world.config();
  StepOutcome out;

  Resolution r = resolve_command(world, cmd);
  out.events = std::move(r.events);
  out.failure = r.failure;
  out.result = r.ok() ? ActionResult::success : ActionResult::failure;
  st.last_action_result = out.result;
  st.last_failure = out.failure;
  world.refresh_buffs(false);

  run_creatures(world, out.events);

  auto& agent = st.agent;
  double satiety_decay = cfg.decay_satiety;
  double thirsty_decay = cfg.decay_thirsty;
  double regen = 0;
  for (const auto& b : agent.active_buffs) {
    const auto& eff = cfg.buff_specs[static_cast<std::size_t>(b.buff)].effect;
    satiety_decay += eff.satiety_decay;
    thirsty_decay += eff.thirsty_decay;
    regen += eff.hp_regen;
  }
  agent.satiety = std::clamp(agent.satiety - satiety_decay, 0.0, world.satiety_cap());
  agent.thirsty = std::clamp(agent.thirsty - thirsty_decay, 0.0, world.thirsty_cap());
  if (agent.hp > 0) agent.hp = std::clamp(agent.hp + regen, 0.0, world.hp_cap());

  ++st.clock;
  st.phase = phase_at(cfg, st.clock);
  st.season = season_at(cfg, st.clock);
  tick_durability(world, out.events);
  world.refresh_buffs(true);

  if (agent.hp <= 0) {
    st.cause = DeathCause::killed;
  } else if (agent.satiety <= 0) {
    st.cause = DeathCause::starvation;
  } else if (agent.thirsty <= 0) {
    st.cause = DeathCause::dehydration;
  }
  if (st.cause != DeathCause::none) {
    st.done = true;
    Event ev;
    ev.type = EventType::death;
    ev.pos = agent.pos;
    ev.value = static_cast<double>(st.cause);
    out.events.push_back(ev);
  }
  out.done = st.done;
  out.lifetime = st.clock;
  out.cause = st.cause;
  return out;
}

}  // namespace eden
