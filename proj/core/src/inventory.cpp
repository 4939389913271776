#include <algorithm>

#include "eden/engine.hpp"

namespace eden {

namespace {

using Backpack = std::array<Slot, kBackpackSlots>;

int slot_index(EquipSlot s) { return static_cast<int>(s) - 1; }

// Adds to a backpack copy; false if it does not fit.
bool add_item(Backpack& bp, const ItemSpec& spec, int item, int count, int durability) {
  if (spec.stackable) {
    for (auto& s : bp) {
      if (s.item == item) {
        s.amount += count;
        return true;
      }
    }
    for (auto& s : bp) {
      if (s.item == 0) {
        s = {item, count};
        return true;
      }
    }
    return false;
  }
  for (int i = 0; i < count; ++i) {
    auto it = std::find_if(bp.begin(), bp.end(), [](const Slot& s) { return s.item == 0; });
    if (it == bp.end()) return false;
    *it = {item, durability > 0 ? durability : spec.durability};
  }
  return true;
}

// Removes count units; non-stackables are taken first-slot-first and their
// durabilities appended to `taken`. False if not enough are held.
bool remove_item(Backpack& bp, const ItemSpec& spec, int item, int count, std::vector<int>* taken = nullptr) {
  if (spec.stackable) {
    for (auto& s : bp) {
      if (s.item != item) continue;
      if (s.amount < count) return false;
      s.amount -= count;
      if (s.amount == 0) s = {};
      return true;
    }
    return false;
  }
  int left = count;
  for (auto& s : bp) {
    if (left == 0) break;
    if (s.item != item) continue;
    if (taken) taken->push_back(s.amount);
    s = {};
    --left;
  }
  return left == 0;
}

Event make_event(EventType type, int item, int count, Position pos) {
  Event ev;
  ev.type = type;
  ev.item = item;
  ev.count = count;
  ev.pos = pos;
  return ev;
}

Resolution failed(FailureReason why) {
  Resolution r;
  r.failure = why;
  return r;
}

// Cells within reach ordered by the agent's own cell first, then (dist², y, x).
std::vector<Position> reach_cells(const World& world) {
  const Position a = world.state().agent.pos;
  const int reach = world.config().reach;
  std::vector<Position> cells;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const Position p{a.x + dx, a.y + dy};
      if (world.in_map(p)) cells.push_back(p);
    }
  }
  std::sort(cells.begin(), cells.end(), [a](Position l, Position r) {
    const int dl = dist2(a, l);
    const int dr = dist2(a, r);
    if (dl != dr) return dl < dr;
    if (l.y != r.y) return l.y < r.y;
    return l.x < r.x;
  });
  return cells;
}

Resolution pick(World& world, int item, int count) {
  auto& st = world.mutable_state();
  const auto& spec = world.item_spec(item);
  int available = 0;
  const auto cells = reach_cells(world);
  for (Position p : cells) {
    if (const auto* stacks = world.ground_at(p)) {
      for (const auto& s : *stacks) {
        if (s.item == item) available += s.count;
      }
    }
  }
  if (available < count) return failed(FailureReason::not_available);

  Backpack bp = st.agent.backpack;
  std::vector<int> durabilities;
  int left = count;
  // Plan the removal first so the backpack check can use real durabilities.
  for (Position p : cells) {
    const auto* stacks = world.ground_at(p);
    if (!stacks) continue;
    for (const auto& s : *stacks) {
      if (left == 0) break;
      if (s.item != item) continue;
      const int take = std::min(left, s.count);
      if (!spec.stackable) durabilities.push_back(s.durability);
      left -= take;
    }
  }
  if (spec.stackable) {
    if (!add_item(bp, spec, item, count, 0)) return failed(FailureReason::backpack_full);
  } else {
    for (int d : durabilities) {
      if (!add_item(bp, spec, item, 1, d)) return failed(FailureReason::backpack_full);
    }
  }

  Resolution r;
  left = count;
  for (Position p : cells) {
    if (left == 0) break;
    auto it = st.ground.find(world.cell_index(p));
    if (it == st.ground.end()) continue;
    auto& stacks = it->second;
    int taken_here = 0;
    for (auto s = stacks.begin(); s != stacks.end() && left > 0;) {
      if (s->item != item) {
        ++s;
        continue;
      }
      const int take = std::min(left, s->count);
      s->count -= take;
      left -= take;
      taken_here += take;
      s = s->count == 0 ? stacks.erase(s) : s + 1;
    }
    if (stacks.empty()) st.ground.erase(it);
    if (taken_here > 0) r.events.push_back(make_event(EventType::pickup, item, taken_here, p));
  }
  st.agent.backpack = bp;
  return r;
}

Resolution consume(World& world, int item, int count) {
  auto& agent = world.mutable_state().agent;
  const auto& spec = world.item_spec(item);
  if (!spec.consumable) return failed(FailureReason::not_consumable);
  Backpack bp = agent.backpack;
  if (!remove_item(bp, spec, item, count)) return failed(FailureReason::not_held);
  const bool feeds = spec.satiety_gain >= spec.thirsty_gain;
  const double before = feeds ? agent.satiety / world.satiety_cap() : agent.thirsty / world.thirsty_cap();
  agent.backpack = bp;
  agent.satiety = std::min(world.satiety_cap(), agent.satiety + spec.satiety_gain * count);
  agent.thirsty = std::min(world.thirsty_cap(), agent.thirsty + spec.thirsty_gain * count);
  Resolution r;
  Event ev = make_event(EventType::consume, item, count, agent.pos);
  ev.value = before;
  r.events.push_back(ev);
  return r;
}

Resolution synthesize(World& world, int item, int count) {
  const auto& rules = world.rules();
  auto it = std::find(rules.recipe_output.begin(), rules.recipe_output.end(), item);
  if (it == rules.recipe_output.end()) return failed(FailureReason::no_recipe);
  const auto& inputs = rules.recipe_inputs[static_cast<std::size_t>(it - rules.recipe_output.begin())];
  auto& agent = world.mutable_state().agent;
  Backpack bp = agent.backpack;
  for (const auto& [input, n] : inputs) {
    if (!remove_item(bp, world.item_spec(input), input, n * count)) return failed(FailureReason::not_held);
  }
  if (!add_item(bp, world.item_spec(item), item, count, 0)) return failed(FailureReason::backpack_full);
  agent.backpack = bp;
  Resolution r;
  for (const auto& [input, n] : inputs) r.events.push_back(make_event(EventType::ingredient, input, n * count, agent.pos));
  r.events.push_back(make_event(EventType::synthesize, item, count, agent.pos));
  return r;
}

Resolution discard(World& world, int item, int count) {
  auto& agent = world.mutable_state().agent;
  const auto& spec = world.item_spec(item);
  Backpack bp = agent.backpack;
  std::vector<int> durabilities;
  if (!remove_item(bp, spec, item, count, &durabilities)) return failed(FailureReason::not_held);
  agent.backpack = bp;
  Resolution r;
  r.events.push_back(make_event(EventType::discard, item, count, agent.pos));
  std::vector<Event> spawned;
  if (spec.stackable) {
    world.drop_items(agent.pos, item, count, 0, spawned);
  } else {
    for (int d : durabilities) world.drop_items(agent.pos, item, 1, d, spawned);
  }
  return r;
}

Resolution equip(World& world, int item) {
  auto& agent = world.mutable_state().agent;
  const auto& spec = world.item_spec(item);
  if (spec.slot == EquipSlot::none) return failed(FailureReason::not_equipable);
  Slot& slot = agent.equipment[static_cast<std::size_t>(slot_index(spec.slot))];
  Resolution r;
  if (slot.item == item) {
    Backpack bp = agent.backpack;
    if (!add_item(bp, spec, item, 1, slot.amount)) return failed(FailureReason::backpack_full);
    agent.backpack = bp;
    slot = {};
    r.events.push_back(make_event(EventType::unequip, item, 1, agent.pos));
    return r;
  }
  if (slot.item != 0) return failed(FailureReason::slot_mismatch);
  Backpack bp = agent.backpack;
  std::vector<int> durabilities;
  if (!remove_item(bp, spec, item, 1, &durabilities)) return failed(FailureReason::not_held);
  agent.backpack = bp;
  slot = {item, spec.stackable ? spec.durability : durabilities.front()};
  r.events.push_back(make_event(EventType::equip, item, 1, agent.pos));
  return r;
}

}  // namespace

Resolution resolve_inventory(World& world, const ActionCommand& cmd) {
  const int item = cmd.p1;
  const int n_items = static_cast<int>(world.config().item_specs.size());
  if (item < 1 || item > n_items) return failed(FailureReason::malformed);
  const int count = cmd.p2;
  switch (cmd.id) {
    case ActionId::pick:
      if (count < 1) return failed(FailureReason::malformed);
      return pick(world, item, count);
    case ActionId::consume:
      if (count < 1) return failed(FailureReason::malformed);
      return consume(world, item, count);
    case ActionId::synthesize:
      if (count < 1) return failed(FailureReason::malformed);
      return synthesize(world, item, count);
    case ActionId::discard:
      if (count < 1) return failed(FailureReason::malformed);
      return discard(world, item, count);
    case ActionId::equip:
      return equip(world, item);
    default:
      return failed(FailureReason::malformed);
  }
}

}  // namespace eden
