#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eden {

inline constexpr int kSchemaVersion = 1;

enum class WorldKind { survival, navigation };
enum class Behavior { static_, flee, aggressive };
enum class EquipSlot { none, hand, body };
enum class BuffSource { basic, environment, terrain, equipment };
enum class DropTrigger { kill, collect };
enum class Phase { day, night };
enum class Season { none, spring, summer, autumn, winter };

struct CreatureSpec {
  std::string kind;
  std::map<std::string, double> attributes;
  Behavior behavior = Behavior::static_;
  int flee_radius = 0;
  int aggro_radius = 0;
  double move_speed = 0.0;
  // nullopt means the creature never depletes.
  std::optional<int> collect_capacity = 0;

  bool operator==(const CreatureSpec&) const = default;
};

struct ItemSpec {
  std::string id;
  bool consumable = false;
  double satiety_gain = 0.0;
  double thirsty_gain = 0.0;
  EquipSlot slot = EquipSlot::none;
  int durability = 0;
  bool stackable = true;

  bool operator==(const ItemSpec&) const = default;
};

struct ItemCount {
  std::string item;
  int count = 1;

  bool operator==(const ItemCount&) const = default;
};

struct Recipe {
  std::string output;
  std::vector<ItemCount> inputs;

  bool operator==(const Recipe&) const = default;
};

struct DropRule {
  std::string source;
  DropTrigger trigger = DropTrigger::kill;
  std::vector<ItemCount> items;

  bool operator==(const DropRule&) const = default;
};

// All present conditions must hold for the buff to be active.
struct BuffCondition {
  std::optional<Phase> phase;
  std::optional<Season> season;
  std::optional<std::string> weather;
  std::optional<std::string> terrain;
  std::optional<std::string> equipped;
  std::optional<std::string> not_equipped;
  std::optional<double> min_bar_fraction;

  bool operator==(const BuffCondition&) const = default;
};

enum class VisionMode { day, night, torch };

struct BuffEffect {
  double attack = 0.0;
  double defense = 0.0;
  double satiety_decay = 0.0;
  double thirsty_decay = 0.0;
  double hp_regen = 0.0;
  int move_radius = 0;
  std::optional<VisionMode> vision;

  bool operator==(const BuffEffect&) const = default;
};

struct BuffSpec {
  std::string id;
  BuffSource source = BuffSource::basic;
  BuffCondition when;
  BuffEffect effect;
  // nullopt: active exactly while the condition holds. A value k: once
  // triggered the buff persists for k steps.
  std::optional<int> duration;

  bool operator==(const BuffSpec&) const = default;
};

struct Geography {
  std::string id;
  double weight = 1.0;
  // creature kind -> per-cell spawn probability
  std::map<std::string, double> spawn;

  bool operator==(const Geography&) const = default;
};

struct Placement {
  std::string kind;
  int x = 0;
  int y = 0;

  bool operator==(const Placement&) const = default;
};

struct TerrainSpec {
  int region_size = 8;
  std::vector<Geography> geographies;
  std::vector<Placement> placements;
  // kinds that must appear at least once after generation
  std::vector<std::string> require;

  bool operator==(const TerrainSpec&) const = default;
};

struct WeatherSpec {
  int region_size = 8;
  // indexed spring, summer, autumn, winter
  std::vector<double> rain = {0, 0, 0, 0};
  std::vector<double> snow = {0, 0, 0, 0};

  bool operator==(const WeatherSpec&) const = default;
};

struct SeedPolicy {
  enum class Mode { per_episode, fixed };
  Mode mode = Mode::per_episode;
  std::uint64_t map_seed = 0;

  bool operator==(const SeedPolicy&) const = default;
};

struct AgentSpawn {
  enum class Mode { random, center, fixed };
  Mode mode = Mode::random;
  int x = 0;
  int y = 0;

  bool operator==(const AgentSpawn&) const = default;
};

struct ObservationSlots {
  int max_creatures = 128;
  int max_materials = 64;

  bool operator==(const ObservationSlots&) const = default;
};

struct NavigationSpec {
  int horizon = 20;
  double goal_tolerance = 0.1;
  int max_offset = 2;

  bool operator==(const NavigationSpec&) const = default;
};

struct WorldConfig {
  std::string name;
  WorldKind kind = WorldKind::survival;
  int map_width = 64;
  int map_height = 64;
  int life_limit = 100;
  double decay_satiety = 1.0;
  double decay_thirsty = 1.0;
  int day_length = 120;
  int night_length = 60;
  int season_length = 0;
  int vision_day = 15;
  int vision_night = 3;
  int vision_torch = 10;
  int move_radius = 2;
  int reach = 1;
  std::vector<CreatureSpec> creature_specs;
  std::vector<ItemSpec> item_specs;
  std::vector<Recipe> synthesis_table;
  std::vector<DropRule> drop_table;
  std::vector<BuffSpec> buff_specs;
  TerrainSpec terrain_spec;
  WeatherSpec weather;
  SeedPolicy seed_policy;
  AgentSpawn agent_spawn;
  std::vector<ItemCount> initial_inventory;
  ObservationSlots observation;
  NavigationSpec navigation;

  bool operator==(const WorldConfig&) const = default;

  // Index lookups; -1 when absent.
  int creature_index(std::string_view kind) const;
  int item_index(std::string_view id) const;
  const CreatureSpec* creature(std::string_view kind) const;
  const ItemSpec* item(std::string_view id) const;
};

struct Violation {
  std::string field;
  std::string rule;

  std::string to_string() const;
  bool operator==(const Violation&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { syntax, missing_key, unknown_key, type_mismatch, validation };

  ConfigError(Kind kind, std::string message, std::vector<Violation> violations = {});

  Kind kind() const { return kind_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  Kind kind_;
  std::vector<Violation> violations_;
};

std::vector<Violation> validate(const WorldConfig& cfg);

// Parses a schema_version 1 JSON document and validates it.
WorldConfig parse_config(std::string_view text);

// Canonical serialization; parse_config(serialize_config(c)) == c.
std::string serialize_config(const WorldConfig& cfg, int indent = 2);

std::vector<std::string> preset_names();
WorldConfig preset(std::string_view name);

// 64-bit FNV-1a over the compact canonical serialization.
std::uint64_t config_digest(const WorldConfig& cfg);

std::string_view to_string(WorldKind v);
std::string_view to_string(Behavior v);
std::string_view to_string(EquipSlot v);
std::string_view to_string(BuffSource v);
std::string_view to_string(DropTrigger v);
std::string_view to_string(Phase v);
std::string_view to_string(Season v);
std::string_view to_string(VisionMode v);

}  // namespace eden
