#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "eden/config.hpp"
#include "eden/digest.hpp"

namespace eden {

using nlohmann::json;

namespace {

std::string type_name(const json& j) {
  if (j.is_number_integer()) return "integer";
  return j.type_name();
}

// Strict view over one JSON object: every key must be read or the object is
// rejected when finish() runs.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) {
      throw ConfigError(ConfigError::Kind::type_mismatch,
                        where() + ": expected object, got " + type_name(j));
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  template <typename T>
  T required(const std::string& key) {
    if (!j_.contains(key)) {
      throw ConfigError(ConfigError::Kind::missing_key,
                        "missing required key \"" + child(key) + "\"");
    }
    return get<T>(key);
  }

  template <typename T>
  T optional(const std::string& key, T fallback) {
    if (!j_.contains(key)) return fallback;
    return get<T>(key);
  }

  template <typename T>
  std::optional<T> maybe(const std::string& key) {
    if (!j_.contains(key)) return std::nullopt;
    return get<T>(key);
  }

  // Key present and null -> nullopt; absent -> fallback.
  std::optional<int> nullable_int(const std::string& key, std::optional<int> fallback) {
    if (!j_.contains(key)) return fallback;
    seen_.insert(key);
    if (j_.at(key).is_null()) return std::nullopt;
    return convert<int>(j_.at(key), child(key));
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) {
        throw ConfigError(ConfigError::Kind::unknown_key, "unknown key \"" + child(key) + "\"");
      }
    }
  }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  template <typename T>
  static T convert(const json& v, const std::string& path) {
    auto mismatch = [&](const char* expected) {
      return ConfigError(ConfigError::Kind::type_mismatch,
                         path + ": expected " + expected + ", got " + type_name(v));
    };
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw mismatch("boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) throw mismatch("integer");
      const auto wide = v.get<std::int64_t>();
      if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
        throw mismatch("32-bit integer");
      }
      return static_cast<int>(wide);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned()) throw mismatch("unsigned integer");
      return v.get<std::uint64_t>();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw mismatch("number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw mismatch("string");
      return v.get<std::string>();
    } else {
      static_assert(sizeof(T) == 0, "unsupported config field type");
    }
  }

 private:
  template <typename T>
  T get(const std::string& key) {
    seen_.insert(key);
    return convert<T>(j_.at(key), child(key));
  }

  std::string where() const { return path_.empty() ? "document" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) {
    throw ConfigError(ConfigError::Kind::type_mismatch,
                      path + ": expected array, got " + type_name(j));
  }
  return j;
}

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& text, const std::array<Enum, N>& values,
                const std::string& path) {
  std::string accepted;
  for (Enum v : values) {
    if (to_string(v) == text) return v;
    if (!accepted.empty()) accepted += "|";
    accepted += to_string(v);
  }
  throw ConfigError(ConfigError::Kind::type_mismatch,
                    path + ": expected one of " + accepted + ", got \"" + text + "\"");
}

constexpr std::array kBehaviors = {Behavior::static_, Behavior::flee, Behavior::aggressive};
constexpr std::array kSlots = {EquipSlot::none, EquipSlot::hand, EquipSlot::body};
constexpr std::array kSources = {BuffSource::basic, BuffSource::environment, BuffSource::terrain,
                                 BuffSource::equipment};
constexpr std::array kTriggers = {DropTrigger::kill, DropTrigger::collect};
constexpr std::array kPhases = {Phase::day, Phase::night};
constexpr std::array kSeasons = {Season::spring, Season::summer, Season::autumn, Season::winter};
constexpr std::array kVisions = {VisionMode::day, VisionMode::night, VisionMode::torch};
constexpr std::array kKinds = {WorldKind::survival, WorldKind::navigation};

std::vector<ItemCount> parse_item_counts(const json& j, const std::string& path) {
  std::vector<ItemCount> out;
  expect_array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) {
    ObjectReader r(j[i], path + "[" + std::to_string(i) + "]");
    ItemCount ic;
    ic.item = r.required<std::string>("item");
    ic.count = r.optional<int>("count", 1);
    r.finish();
    out.push_back(std::move(ic));
  }
  return out;
}

std::map<std::string, double> parse_number_map(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  std::map<std::string, double> out;
  for (const auto& [key, value] : j.items()) out[key] = r.required<double>(key);
  r.finish();
  return out;
}

std::vector<double> parse_number_list(const json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(ObjectReader::convert<double>(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

CreatureSpec parse_creature(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  CreatureSpec c;
  c.kind = r.required<std::string>("kind");
  if (r.has("attributes")) c.attributes = parse_number_map(r.raw("attributes"), r.child("attributes"));
  c.behavior = parse_enum(r.optional<std::string>("behavior", "static"), kBehaviors,
                          r.child("behavior"));
  c.flee_radius = r.optional<int>("flee_radius", 0);
  c.aggro_radius = r.optional<int>("aggro_radius", 0);
  c.move_speed = r.optional<double>("move_speed", 0.0);
  c.collect_capacity = r.nullable_int("collect_capacity", 0);
  r.finish();
  return c;
}

ItemSpec parse_item(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ItemSpec it;
  it.id = r.required<std::string>("id");
  it.consumable = r.optional<bool>("consumable", false);
  it.satiety_gain = r.optional<double>("satiety_gain", 0.0);
  it.thirsty_gain = r.optional<double>("thirsty_gain", 0.0);
  it.slot = parse_enum(r.optional<std::string>("slot", "none"), kSlots, r.child("slot"));
  it.durability = r.optional<int>("durability", it.slot == EquipSlot::none ? 0 : 1);
  it.stackable = r.optional<bool>("stackable", it.slot == EquipSlot::none);
  r.finish();
  return it;
}

Recipe parse_recipe(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  Recipe rec;
  rec.output = r.required<std::string>("output");
  rec.inputs = parse_item_counts(r.raw("inputs"), r.child("inputs"));
  r.finish();
  return rec;
}

DropRule parse_drop(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  DropRule d;
  d.source = r.required<std::string>("source");
  d.trigger = parse_enum(r.required<std::string>("on"), kTriggers, r.child("on"));
  if (!r.has("items")) {
    throw ConfigError(ConfigError::Kind::missing_key, "missing required key \"" + r.child("items") + "\"");
  }
  d.items = parse_item_counts(r.raw("items"), r.child("items"));
  r.finish();
  return d;
}

BuffSpec parse_buff(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  BuffSpec b;
  b.id = r.required<std::string>("id");
  b.source = parse_enum(r.required<std::string>("source"), kSources, r.child("source"));
  if (r.has("when")) {
    ObjectReader w(r.raw("when"), r.child("when"));
    if (auto p = w.maybe<std::string>("phase")) b.when.phase = parse_enum(*p, kPhases, w.child("phase"));
    if (auto s = w.maybe<std::string>("season")) b.when.season = parse_enum(*s, kSeasons, w.child("season"));
    b.when.weather = w.maybe<std::string>("weather");
    b.when.terrain = w.maybe<std::string>("terrain");
    b.when.equipped = w.maybe<std::string>("equipped");
    b.when.not_equipped = w.maybe<std::string>("not_equipped");
    b.when.min_bar_fraction = w.maybe<double>("min_bar_fraction");
    w.finish();
  }
  if (r.has("effect")) {
    ObjectReader e(r.raw("effect"), r.child("effect"));
    b.effect.attack = e.optional<double>("attack", 0.0);
    b.effect.defense = e.optional<double>("defense", 0.0);
    b.effect.satiety_decay = e.optional<double>("satiety_decay", 0.0);
    b.effect.thirsty_decay = e.optional<double>("thirsty_decay", 0.0);
    b.effect.hp_regen = e.optional<double>("hp_regen", 0.0);
    b.effect.move_radius = e.optional<int>("move_radius", 0);
    if (auto v = e.maybe<std::string>("vision")) b.effect.vision = parse_enum(*v, kVisions, e.child("vision"));
    e.finish();
  }
  b.duration = r.nullable_int("duration", std::nullopt);
  r.finish();
  return b;
}

TerrainSpec parse_terrain(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  TerrainSpec t;
  t.region_size = r.optional<int>("region_size", 8);
  if (r.has("geographies")) {
    const auto& arr = expect_array(r.raw("geographies"), r.child("geographies"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      ObjectReader g(arr[i], r.child("geographies") + "[" + std::to_string(i) + "]");
      Geography geo;
      geo.id = g.required<std::string>("id");
      geo.weight = g.optional<double>("weight", 1.0);
      if (g.has("spawn")) geo.spawn = parse_number_map(g.raw("spawn"), g.child("spawn"));
      g.finish();
      t.geographies.push_back(std::move(geo));
    }
  }
  if (r.has("placements")) {
    const auto& arr = expect_array(r.raw("placements"), r.child("placements"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      ObjectReader p(arr[i], r.child("placements") + "[" + std::to_string(i) + "]");
      Placement pl;
      pl.kind = p.required<std::string>("kind");
      pl.x = p.required<int>("x");
      pl.y = p.required<int>("y");
      p.finish();
      t.placements.push_back(std::move(pl));
    }
  }
  if (r.has("require")) {
    const auto& arr = expect_array(r.raw("require"), r.child("require"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      t.require.push_back(ObjectReader::convert<std::string>(
          arr[i], r.child("require") + "[" + std::to_string(i) + "]"));
    }
  }
  r.finish();
  return t;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

template <typename Vec, typename Fn>
void parse_list(ObjectReader& r, const std::string& key, Vec& out, Fn fn, bool required) {
  if (!r.has(key)) {
    if (required) {
      throw ConfigError(ConfigError::Kind::missing_key, "missing required key \"" + r.child(key) + "\"");
    }
    return;
  }
  const auto& arr = expect_array(r.raw(key), r.child(key));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(fn(arr[i], r.child(key) + "[" + std::to_string(i) + "]"));
  }
}

WorldConfig from_json(const json& doc) {
  if (doc.is_object()) {
    std::vector<std::string> missing;
    for (const char* key : {"schema_version", "kind", "map", "life_limit", "creatures", "items"}) {
      if (!doc.contains(key)) missing.emplace_back(key);
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw ConfigError(ConfigError::Kind::missing_key, "missing required keys: " + list);
    }
  }
  ObjectReader r(doc, "");
  const int version = r.required<int>("schema_version");
  if (version != kSchemaVersion) {
    throw ConfigError(ConfigError::Kind::type_mismatch,
                      "schema_version: expected 1, got " + std::to_string(version));
  }
  WorldConfig cfg;
  cfg.name = r.optional<std::string>("name", "");
  cfg.kind = parse_enum(r.required<std::string>("kind"), kKinds, "kind");
  {
    ObjectReader m(r.raw("map"), "map");
    cfg.map_width = m.required<int>("width");
    cfg.map_height = m.required<int>("height");
    m.finish();
  }
  cfg.life_limit = r.required<int>("life_limit");
  if (r.has("decay")) {
    ObjectReader d(r.raw("decay"), "decay");
    cfg.decay_satiety = d.optional<double>("satiety", 1.0);
    cfg.decay_thirsty = d.optional<double>("thirsty", 1.0);
    d.finish();
  }
  if (r.has("clock")) {
    ObjectReader c(r.raw("clock"), "clock");
    cfg.day_length = c.optional<int>("day_length", 120);
    cfg.night_length = c.optional<int>("night_length", 60);
    cfg.season_length = c.optional<int>("season_length", 0);
    c.finish();
  }
  if (r.has("vision")) {
    ObjectReader v(r.raw("vision"), "vision");
    cfg.vision_day = v.optional<int>("day", 15);
    cfg.vision_night = v.optional<int>("night", 3);
    cfg.vision_torch = v.optional<int>("torch", 10);
    v.finish();
  }
  cfg.move_radius = r.optional<int>("move_radius", 2);
  cfg.reach = r.optional<int>("reach", 1);

  parse_list(r, "creatures", cfg.creature_specs, parse_creature, true);
  parse_list(r, "items", cfg.item_specs, parse_item, true);
  parse_list(r, "recipes", cfg.synthesis_table, parse_recipe, false);
  parse_list(r, "drops", cfg.drop_table, parse_drop, false);
  parse_list(r, "buffs", cfg.buff_specs, parse_buff, false);

  if (r.has("terrain")) cfg.terrain_spec = parse_terrain(r.raw("terrain"), "terrain");
  if (r.has("weather")) {
    ObjectReader w(r.raw("weather"), "weather");
    cfg.weather.region_size = w.optional<int>("region_size", 8);
    if (w.has("rain")) cfg.weather.rain = parse_number_list(w.raw("rain"), "weather.rain");
    if (w.has("snow")) cfg.weather.snow = parse_number_list(w.raw("snow"), "weather.snow");
    w.finish();
  }
  if (r.has("seed_policy")) {
    ObjectReader s(r.raw("seed_policy"), "seed_policy");
    const auto mode = s.required<std::string>("mode");
    if (mode == "per_episode") {
      cfg.seed_policy.mode = SeedPolicy::Mode::per_episode;
    } else if (mode == "fixed") {
      cfg.seed_policy.mode = SeedPolicy::Mode::fixed;
    } else {
      throw ConfigError(ConfigError::Kind::type_mismatch,
                        "seed_policy.mode: expected one of per_episode|fixed, got \"" + mode + "\"");
    }
    cfg.seed_policy.map_seed = s.optional<std::uint64_t>("map_seed", 0);
    s.finish();
  }
  if (r.has("agent_spawn")) {
    const json& spawn = r.raw("agent_spawn");
    if (spawn.is_string()) {
      const auto mode = spawn.get<std::string>();
      if (mode == "random") {
        cfg.agent_spawn.mode = AgentSpawn::Mode::random;
      } else if (mode == "center") {
        cfg.agent_spawn.mode = AgentSpawn::Mode::center;
      } else {
        throw ConfigError(ConfigError::Kind::type_mismatch,
                          "agent_spawn: expected random|center|{x,y}, got \"" + mode + "\"");
      }
    } else {
      ObjectReader s(spawn, "agent_spawn");
      cfg.agent_spawn.mode = AgentSpawn::Mode::fixed;
      cfg.agent_spawn.x = s.required<int>("x");
      cfg.agent_spawn.y = s.required<int>("y");
      s.finish();
    }
  }
  if (r.has("initial_inventory")) {
    cfg.initial_inventory = parse_item_counts(r.raw("initial_inventory"), "initial_inventory");
  }
  if (r.has("observation")) {
    ObjectReader o(r.raw("observation"), "observation");
    cfg.observation.max_creatures = o.optional<int>("max_creatures", 128);
    cfg.observation.max_materials = o.optional<int>("max_materials", 64);
    o.finish();
  }
  if (r.has("navigation")) {
    ObjectReader n(r.raw("navigation"), "navigation");
    cfg.navigation.horizon = n.optional<int>("horizon", 20);
    cfg.navigation.goal_tolerance = n.optional<double>("goal_tolerance", 0.1);
    cfg.navigation.max_offset = n.optional<int>("max_offset", 2);
    n.finish();
  }
  r.finish();
  return cfg;
}

json item_counts_json(const std::vector<ItemCount>& v) {
  json out = json::array();
  for (const auto& ic : v) out.push_back({{"item", ic.item}, {"count", ic.count}});
  return out;
}

json to_json(const WorldConfig& cfg) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = cfg.name;
  doc["kind"] = to_string(cfg.kind);
  doc["map"] = {{"width", cfg.map_width}, {"height", cfg.map_height}};
  doc["life_limit"] = cfg.life_limit;
  doc["decay"] = {{"satiety", cfg.decay_satiety}, {"thirsty", cfg.decay_thirsty}};
  doc["clock"] = {{"day_length", cfg.day_length},
                  {"night_length", cfg.night_length},
                  {"season_length", cfg.season_length}};
  doc["vision"] = {{"day", cfg.vision_day}, {"night", cfg.vision_night}, {"torch", cfg.vision_torch}};
  doc["move_radius"] = cfg.move_radius;
  doc["reach"] = cfg.reach;

  json creatures = json::array();
  for (const auto& c : cfg.creature_specs) {
    json cj;
    cj["kind"] = c.kind;
    cj["attributes"] = json::object();
    for (const auto& [k, v] : c.attributes) cj["attributes"][k] = v;
    cj["behavior"] = to_string(c.behavior);
    cj["flee_radius"] = c.flee_radius;
    cj["aggro_radius"] = c.aggro_radius;
    cj["move_speed"] = c.move_speed;
    cj["collect_capacity"] = c.collect_capacity ? json(*c.collect_capacity) : json(nullptr);
    creatures.push_back(std::move(cj));
  }
  doc["creatures"] = std::move(creatures);

  json items = json::array();
  for (const auto& it : cfg.item_specs) {
    items.push_back({{"id", it.id},
                     {"consumable", it.consumable},
                     {"satiety_gain", it.satiety_gain},
                     {"thirsty_gain", it.thirsty_gain},
                     {"slot", to_string(it.slot)},
                     {"durability", it.durability},
                     {"stackable", it.stackable}});
  }
  doc["items"] = std::move(items);

  json recipes = json::array();
  for (const auto& r : cfg.synthesis_table) {
    recipes.push_back({{"output", r.output}, {"inputs", item_counts_json(r.inputs)}});
  }
  doc["recipes"] = std::move(recipes);

  json drops = json::array();
  for (const auto& d : cfg.drop_table) {
    drops.push_back({{"source", d.source}, {"on", to_string(d.trigger)}, {"items", item_counts_json(d.items)}});
  }
  doc["drops"] = std::move(drops);

  json buffs = json::array();
  for (const auto& b : cfg.buff_specs) {
    json when = json::object();
    if (b.when.phase) when["phase"] = to_string(*b.when.phase);
    if (b.when.season) when["season"] = to_string(*b.when.season);
    if (b.when.weather) when["weather"] = *b.when.weather;
    if (b.when.terrain) when["terrain"] = *b.when.terrain;
    if (b.when.equipped) when["equipped"] = *b.when.equipped;
    if (b.when.not_equipped) when["not_equipped"] = *b.when.not_equipped;
    if (b.when.min_bar_fraction) when["min_bar_fraction"] = *b.when.min_bar_fraction;
    json effect = {{"attack", b.effect.attack},
                   {"defense", b.effect.defense},
                   {"satiety_decay", b.effect.satiety_decay},
                   {"thirsty_decay", b.effect.thirsty_decay},
                   {"hp_regen", b.effect.hp_regen},
                   {"move_radius", b.effect.move_radius}};
    if (b.effect.vision) effect["vision"] = to_string(*b.effect.vision);
    buffs.push_back({{"id", b.id},
                     {"source", to_string(b.source)},
                     {"when", std::move(when)},
                     {"effect", std::move(effect)},
                     {"duration", b.duration ? json(*b.duration) : json(nullptr)}});
  }
  doc["buffs"] = std::move(buffs);

  json geos = json::array();
  for (const auto& g : cfg.terrain_spec.geographies) {
    json spawn = json::object();
    for (const auto& [k, v] : g.spawn) spawn[k] = v;
    geos.push_back({{"id", g.id}, {"weight", g.weight}, {"spawn", std::move(spawn)}});
  }
  json placements = json::array();
  for (const auto& p : cfg.terrain_spec.placements) {
    placements.push_back({{"kind", p.kind}, {"x", p.x}, {"y", p.y}});
  }
  doc["terrain"] = {{"region_size", cfg.terrain_spec.region_size},
                    {"geographies", std::move(geos)},
                    {"placements", std::move(placements)},
                    {"require", cfg.terrain_spec.require}};
  doc["weather"] = {{"region_size", cfg.weather.region_size},
                    {"rain", cfg.weather.rain},
                    {"snow", cfg.weather.snow}};
  doc["seed_policy"] = {
      {"mode", cfg.seed_policy.mode == SeedPolicy::Mode::fixed ? "fixed" : "per_episode"},
      {"map_seed", cfg.seed_policy.map_seed}};
  switch (cfg.agent_spawn.mode) {
    case AgentSpawn::Mode::random: doc["agent_spawn"] = "random"; break;
    case AgentSpawn::Mode::center: doc["agent_spawn"] = "center"; break;
    case AgentSpawn::Mode::fixed:
      doc["agent_spawn"] = {{"x", cfg.agent_spawn.x}, {"y", cfg.agent_spawn.y}};
      break;
  }
  doc["initial_inventory"] = item_counts_json(cfg.initial_inventory);
  doc["observation"] = {{"max_creatures", cfg.observation.max_creatures},
                        {"max_materials", cfg.observation.max_materials}};
  doc["navigation"] = {{"horizon", cfg.navigation.horizon},
                       {"goal_tolerance", cfg.navigation.goal_tolerance},
                       {"max_offset", cfg.navigation.max_offset}};
  return doc;
}

}  // namespace

WorldConfig parse_config(std::string_view text) {
  const bool blank = std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\n' || c == '\r' || c == '\t';
  });
  if (blank) {
    throw ConfigError(ConfigError::Kind::missing_key,
                      "missing required keys: schema_version, kind, map, life_limit, creatures, items");
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError(ConfigError::Kind::syntax,
                      "syntax error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + " (byte " + std::to_string(e.byte) + "): " + e.what());
  }
  WorldConfig cfg = from_json(doc);
  auto violations = validate(cfg);
  if (!violations.empty()) {
    throw ConfigError(ConfigError::Kind::validation, "invalid config", std::move(violations));
  }
  return cfg;
}

std::string serialize_config(const WorldConfig& cfg, int indent) {
  return to_json(cfg).dump(indent);
}

std::uint64_t config_digest(const WorldConfig& cfg) { return fnv1a(to_json(cfg).dump()); }

}  // namespace eden
