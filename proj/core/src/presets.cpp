#include "eden/config.hpp"

namespace eden {

namespace {

CreatureSpec agent_spec() {
  CreatureSpec c;
  c.kind = "agent";
  c.attributes = {{"hp", 100}, {"attack", 10}, {"defense", 0}};
  c.behavior = Behavior::static_;
  c.move_speed = 0;
  c.collect_capacity = 0;
  return c;
}

CreatureSpec pig_spec() {
  CreatureSpec c;
  c.kind = "pig";
  c.attributes = {{"hp", 10}, {"move_speed", 0.5}};
  c.behavior = Behavior::flee;
  c.flee_radius = 5;
  c.move_speed = 0.5;
  c.collect_capacity = 0;
  return c;
}

CreatureSpec tree_spec() {
  CreatureSpec c;
  c.kind = "tree";
  c.collect_capacity = 3;
  return c;
}

CreatureSpec river_spec() {
  CreatureSpec c;
  c.kind = "river";
  c.collect_capacity = std::nullopt;
  return c;
}

CreatureSpec wolf_spec() {
  CreatureSpec c;
  c.kind = "wolf";
  c.attributes = {{"hp", 30}, {"attack", 10}};
  c.behavior = Behavior::aggressive;
  c.aggro_radius = 8;
  c.move_speed = 1;
  c.collect_capacity = 0;
  return c;
}

ItemSpec consumable(std::string id, double satiety, double thirsty) {
  ItemSpec it;
  it.id = std::move(id);
  it.consumable = true;
  it.satiety_gain = satiety;
  it.thirsty_gain = thirsty;
  return it;
}

ItemSpec material(std::string id) {
  ItemSpec it;
  it.id = std::move(id);
  return it;
}

ItemSpec equipment(std::string id, EquipSlot slot, int durability) {
  ItemSpec it;
  it.id = std::move(id);
  it.slot = slot;
  it.durability = durability;
  it.stackable = false;
  return it;
}

BuffSpec buff(std::string id, BuffSource source, BuffCondition when, BuffEffect effect) {
  BuffSpec b;
  b.id = std::move(id);
  b.source = source;
  b.when = std::move(when);
  b.effect = effect;
  return b;
}

// The nine-entry registry shared by both survival presets. Order is the
// Block4 flag order and the vision-override precedence (last active wins).
std::vector<BuffSpec> survival_buffs() {
  std::vector<BuffSpec> out;
  {
    BuffCondition w;
    w.phase = Phase::night;
    BuffEffect e;
    e.vision = VisionMode::night;
    out.push_back(buff("night_vision_debuff", BuffSource::environment, w, e));
  }
  {
    BuffCondition w;
    w.phase = Phase::night;
    w.equipped = "torch";
    BuffEffect e;
    e.vision = VisionMode::torch;
    out.push_back(buff("torch_vision_buff", BuffSource::equipment, w, e));
  }
  {
    BuffCondition w;
    w.season = Season::winter;
    w.not_equipped = "coat";
    BuffEffect e;
    e.satiety_decay = 1;
    out.push_back(buff("winter_cold", BuffSource::environment, w, e));
  }
  {
    BuffCondition w;
    w.season = Season::summer;
    BuffEffect e;
    e.thirsty_decay = 1;
    out.push_back(buff("summer_heat", BuffSource::environment, w, e));
  }
  {
    BuffCondition w;
    w.weather = "rain";
    BuffEffect e;
    e.move_radius = -1;
    out.push_back(buff("rain_slow", BuffSource::environment, w, e));
  }
  {
    BuffCondition w;
    w.equipped = "coat";
    BuffEffect e;
    e.defense = 5;
    out.push_back(buff("coat_warmth", BuffSource::equipment, w, e));
  }
  {
    BuffCondition w;
    w.equipped = "spear";
    BuffEffect e;
    e.attack = 10;
    out.push_back(buff("spear_attack", BuffSource::equipment, w, e));
  }
  {
    BuffCondition w;
    w.terrain = "forest";
    BuffEffect e;
    e.defense = 2;
    out.push_back(buff("terrain_forest_cover", BuffSource::terrain, w, e));
  }
  {
    BuffCondition w;
    w.min_bar_fraction = 0.8;
    BuffEffect e;
    e.hp_regen = 1;
    out.push_back(buff("well_fed_regen", BuffSource::basic, w, e));
  }
  return out;
}

WorldConfig day_and_night() {
  WorldConfig cfg;
  cfg.name = "day_and_night";
  cfg.kind = WorldKind::survival;
  cfg.map_width = 64;
  cfg.map_height = 64;
  cfg.life_limit = 100;
  cfg.creature_specs = {agent_spec(), pig_spec(), tree_spec(), river_spec()};
  cfg.item_specs = {consumable("water", 0, 30), consumable("meat", 30, 0), material("wood"),
                    equipment("torch", EquipSlot::hand, 60)};
  cfg.synthesis_table = {Recipe{"torch", {{"wood", 2}}}};
  cfg.drop_table = {DropRule{"pig", DropTrigger::kill, {{"meat", 2}}},
                    DropRule{"tree", DropTrigger::collect, {{"wood", 1}}},
                    DropRule{"river", DropTrigger::collect, {{"water", 1}}}};
  cfg.buff_specs = survival_buffs();
  cfg.terrain_spec.region_size = 8;
  cfg.terrain_spec.geographies = {
      Geography{"grassland", 0.5, {{"pig", 0.02}, {"tree", 0.02}, {"river", 0.005}}},
      Geography{"forest", 0.3, {{"pig", 0.01}, {"tree", 0.15}}},
      Geography{"riverside", 0.2, {{"pig", 0.01}, {"tree", 0.02}, {"river", 0.12}}},
  };
  cfg.terrain_spec.require = {"river", "pig"};
  return cfg;
}

WorldConfig four_season() {
  WorldConfig cfg = day_and_night();
  cfg.name = "four_season";
  cfg.season_length = 300;
  cfg.creature_specs.push_back(wolf_spec());
  cfg.item_specs.push_back(material("fur"));
  cfg.item_specs.push_back(equipment("coat", EquipSlot::body, 300));
  cfg.item_specs.push_back(equipment("spear", EquipSlot::hand, 200));
  cfg.synthesis_table.push_back(Recipe{"coat", {{"fur", 2}}});
  cfg.synthesis_table.push_back(Recipe{"spear", {{"wood", 2}, {"fur", 1}}});
  cfg.drop_table.push_back(DropRule{"wolf", DropTrigger::kill, {{"meat", 1}, {"fur", 1}}});
  cfg.terrain_spec.geographies[0].spawn["wolf"] = 0.002;
  cfg.terrain_spec.geographies[1].spawn["wolf"] = 0.01;
  cfg.weather.rain = {0.3, 0.1, 0.3, 0.0};
  cfg.weather.snow = {0.0, 0.0, 0.0, 0.5};
  return cfg;
}

WorldConfig navigation40() {
  WorldConfig cfg;
  cfg.name = "navigation40";
  cfg.kind = WorldKind::navigation;
  cfg.map_width = 40;
  cfg.map_height = 40;
  cfg.life_limit = 20;
  cfg.creature_specs = {river_spec()};
  cfg.terrain_spec.region_size = 8;
  cfg.terrain_spec.geographies = {Geography{"plain", 1.0, {{"river", 0.03}}}};
  cfg.terrain_spec.require = {"river"};
  cfg.agent_spawn.mode = AgentSpawn::Mode::center;
  cfg.navigation = NavigationSpec{20, 0.1, 2};
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() { return {"day_and_night", "four_season", "navigation40"}; }

WorldConfig preset(std::string_view name) {
  if (name == "day_and_night") return day_and_night();
  if (name == "four_season") return four_season();
  if (name == "navigation40") return navigation40();
  throw std::invalid_argument("unknown preset \"" + std::string(name) + "\"");
}

}  // namespace eden
