#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eden/config.hpp"
#include "eden/rng.hpp"

namespace eden {

inline constexpr int kBackpackSlots = 24;
inline constexpr int kEquipSlots = 2;  // hand, body

struct Position {
  int x = 0;
  int y = 0;

  bool operator==(const Position&) const = default;
};

inline int chebyshev(Position a, Position b) {
  const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx > dy ? dx : dy;
}

inline int dist2(Position a, Position b) {
  const int dx = a.x - b.x;
  const int dy = a.y - b.y;
  return dx * dx + dy * dy;
}

using EntityId = std::int32_t;  // 0 is "no entity"

enum class ActionId : std::uint8_t {
  attack,
  collect,
  pick,
  consume,
  synthesize,
  discard,
  equip,
  move,
  idle,
};
inline constexpr int kActionIdCount = 9;

// attack/collect: p1,p2 = target cell. pick/consume/synthesize/discard:
// p1 = item type id, p2 = count. equip: p1 = item type id. move: p1,p2 = offset.
struct ActionCommand {
  ActionId id = ActionId::idle;
  int p1 = 0;
  int p2 = 0;

  bool operator==(const ActionCommand&) const = default;
};

enum class ActionResult : std::uint8_t { success, failure };

enum class FailureReason : std::uint8_t {
  none,
  malformed,
  out_of_map,
  no_target,
  out_of_reach,
  not_attackable,
  not_collectible,
  blocked,
  not_held,
  not_available,
  backpack_full,
  not_consumable,
  no_recipe,
  not_equipable,
  slot_mismatch,
};

enum class DeathCause : std::uint8_t { none, starvation, dehydration, killed };

enum class EventType : std::uint8_t {
  move,
  attack,      // a hit on a creature; value = damage dealt
  kill,
  collect,
  deplete,     // a static collectible was exhausted and removed
  spawn,       // items appeared on the ground (drop table)
  pickup,
  consume,     // value = fraction of the relevant bar before consuming
  synthesize,
  ingredient,  // recipe input removed by synthesize
  discard,
  equip,
  unequip,
  item_break,  // equipped item reached durability 0
  damage,      // agent took damage; value = damage
  death,
  horizon,
};

struct Event {
  EventType type = EventType::move;
  EntityId entity = 0;
  int kind = -1;   // creature kind index, -1 when not applicable
  int item = 0;    // item type id (1-based), 0 when not applicable
  int count = 0;
  double value = 0;
  Position pos;

  bool operator==(const Event&) const = default;
};

std::string_view to_string(ActionId v);
std::string_view to_string(EventType v);
std::string_view to_string(FailureReason v);
std::string_view to_string(DeathCause v);
std::optional<ActionId> parse_action_id(std::string_view name);

struct Slot {
  int item = 0;    // item type id, 0 = empty
  int amount = 0;  // count for stackables, durability otherwise

  bool operator==(const Slot&) const = default;
};

struct BuffInstance {
  int buff = 0;  // index into the buff registry
  BuffSource source = BuffSource::basic;
  std::optional<int> remaining;  // nullopt = conditional/unbounded

  bool operator==(const BuffInstance&) const = default;
};

struct AgentEntity {
  Position pos;
  double hp = 0;
  double satiety = 0;
  double thirsty = 0;
  double attack = 0;   // base values; buffs add on top
  double defense = 0;
  std::array<Slot, kBackpackSlots> backpack{};
  std::array<Slot, kEquipSlots> equipment{};
  std::vector<BuffInstance> active_buffs;

  bool operator==(const AgentEntity&) const = default;
};

struct Entity {
  EntityId id = 0;
  int kind = 0;
  Position pos;
  std::vector<double> attributes;  // ordered by attribute name
  std::optional<int> remaining_collects;
  bool aggro = false;
  double move_budget = 0;

  bool operator==(const Entity&) const = default;
};

struct GroundStack {
  int item = 0;
  int count = 0;
  int durability = 0;  // non-stackables only

  bool operator==(const GroundStack&) const = default;
};

struct WorldState {
  std::int64_t clock = 0;
  Phase phase = Phase::day;
  Season season = Season::none;
  std::vector<Entity> entities;  // sorted by id
  EntityId next_id = 1;
  AgentEntity agent;
  std::map<int, std::vector<GroundStack>> ground;  // cell index -> stacks
  std::vector<std::uint8_t> geography;             // per cell, index into geographies
  std::vector<EntityId> occupancy;                 // per cell
  Rng rng;
  std::uint64_t seed = 0;
  std::uint64_t map_seed = 0;
  bool done = false;
  ActionResult last_action_result = ActionResult::success;
  FailureReason last_failure = FailureReason::none;
  DeathCause cause = DeathCause::none;

  bool operator==(const WorldState&) const = default;
};

// Per-kind tables compiled once from a WorldConfig and shared by copies.
struct KindRules {
  Behavior behavior = Behavior::static_;
  int flee_radius = 0;
  int aggro_radius = 0;
  double move_speed = 0;
  int hp_attr = -1;
  int attack_attr = -1;
  std::optional<int> collect_capacity;
  std::vector<std::pair<int, int>> kill_drops;     // (item id, count)
  std::vector<std::pair<int, int>> collect_drops;  // (item id, count)
  std::vector<std::string> attribute_names;
  std::vector<double> initial_attributes;

  bool attackable() const { return hp_attr >= 0; }
  bool collectible() const {
    return !collect_drops.empty() && (!collect_capacity || *collect_capacity > 0);
  }
};

struct Rules {
  WorldConfig cfg;
  std::vector<KindRules> kinds;
  int agent_kind = -1;
  std::vector<std::vector<std::pair<int, int>>> recipe_inputs;  // by recipe index
  std::vector<int> recipe_output;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct StepOutcome {
  std::vector<Event> events;
  bool done = false;
  ActionResult result = ActionResult::success;
  FailureReason failure = FailureReason::none;
  std::int64_t lifetime = 0;
  DeathCause cause = DeathCause::none;

  bool has(EventType type) const;
};

struct Resolution {
  FailureReason failure = FailureReason::none;
  std::vector<Event> events;

  bool ok() const { return failure == FailureReason::none; }
};

enum class Weather : std::uint8_t { clear = 1, rain = 2, snow = 3 };
std::string_view to_string(Weather w);

class World {
 public:
  const WorldConfig& config() const { return rules_->cfg; }
  const Rules& rules() const { return *rules_; }
  const WorldState& state() const { return state_; }
  WorldState& mutable_state() { return state_; }

  int width() const { return rules_->cfg.map_width; }
  int height() const { return rules_->cfg.map_height; }
  bool in_map(Position p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width() && p.y < height();
  }
  int cell_index(Position p) const { return p.y * width() + p.x; }

  const Entity* entity(EntityId id) const;
  Entity* entity(EntityId id);
  const Entity* entity_at(Position p) const;
  const std::vector<GroundStack>* ground_at(Position p) const;

  Weather weather_at(Position p) const;
  int geography_at(Position p) const { return state_.geography[static_cast<std::size_t>(cell_index(p))]; }

  double effective_attack() const;
  double effective_defense() const;
  int effective_move_radius() const;
  bool buff_active(int buff) const;
  bool buff_active(std::string_view id) const;

  int backpack_count(int item) const;
  int equipped_item(EquipSlot slot) const;
  int item_id(std::string_view name) const { return rules_->cfg.item_index(name) + 1; }
  const ItemSpec& item_spec(int item) const {
    return rules_->cfg.item_specs[static_cast<std::size_t>(item - 1)];
  }
  double satiety_cap() const { return rules_->cfg.life_limit; }
  double thirsty_cap() const { return rules_->cfg.life_limit; }
  double hp_cap() const;

  // Engine internals exposed for the resolve_* entry points and tests.
  EntityId spawn_entity(int kind, Position p);
  void remove_entity(EntityId id);
  void move_entity(Entity& e, Position to);
  void drop_items(Position p, int item, int count, int durability, std::vector<Event>& events);
  void refresh_buffs(bool tick);

 private:
  friend World new_world(const WorldConfig& cfg, std::uint64_t seed);
  World(std::shared_ptr<const Rules> rules, WorldState state)
      : rules_(std::move(rules)), state_(std::move(state)) {}

  std::shared_ptr<const Rules> rules_;
  WorldState state_;
};

std::shared_ptr<const Rules> compile_rules(const WorldConfig& cfg);

World new_world(const WorldConfig& cfg, std::uint64_t seed);

StepOutcome step(World& world, const ActionCommand& cmd);

Resolution resolve_attack(World& world, Position target);
Resolution resolve_collect(World& world, Position target);
Resolution resolve_inventory(World& world, const ActionCommand& cmd);
Resolution resolve_move(World& world, int ox, int oy);

int vision_radius(const World& world);

Phase phase_at(const WorldConfig& cfg, std::int64_t clock);
Season season_at(const WorldConfig& cfg, std::int64_t clock);

}  // namespace eden
