#include "eden/reward.hpp"

#include <algorithm>

namespace eden {

std::string_view to_string(RewardVariant v) {
  switch (v) {
    case RewardVariant::dense: return "dense";
    case RewardVariant::sparse: return "sparse";
    case RewardVariant::very_sparse: return "very_sparse";
    case RewardVariant::deceptive: return "deceptive";
  }
  return "?";
}

std::optional<RewardVariant> parse_reward_variant(std::string_view name) {
  for (auto v : {RewardVariant::dense, RewardVariant::sparse, RewardVariant::very_sparse, RewardVariant::deceptive}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

RewardTable dense_table() { return RewardTable{}; }

RewardTable deceptive_table() {
  RewardTable t;
  t.consume_needed = 0;
  t.pickup = 5;
  return t;
}

std::vector<std::pair<std::string, double>> entries(const RewardTable& t) {
  return {{"kill", t.kill},
          {"attack_hit", t.attack_hit},
          {"collect", t.collect},
          {"pickup", t.pickup},
          {"consume_needed", t.consume_needed},
          {"consume_full", t.consume_full},
          {"synthesize", t.synthesize},
          {"equip", t.equip},
          {"failed_action", t.failed_action},
          {"per_step", t.per_step},
          {"death", t.death}};
}

RewardSpec reward_spec(RewardVariant variant, const WorldConfig& cfg) {
  RewardSpec s;
  s.variant = variant;
  s.table = variant == RewardVariant::deceptive ? deceptive_table() : dense_table();
  for (const char* name : {"meat", "water"}) {
    const int id = cfg.item_index(name) + 1;
    if (id > 0) s.sparse_items.push_back(id);
  }
  return s;
}

double compute_reward(const StepOutcome& outcome, bool done, const RewardSpec& spec) {
  switch (spec.variant) {
    case RewardVariant::very_sparse:
      return done ? spec.terminal_value : 0.0;
    case RewardVariant::sparse: {
      const bool paid = std::any_of(outcome.events.begin(), outcome.events.end(), [&](const Event& e) {
        return e.type == EventType::consume &&
               std::find(spec.sparse_items.begin(), spec.sparse_items.end(), e.item) != spec.sparse_items.end();
      });
      return paid ? spec.sparse_value : 0.0;
    }
    case RewardVariant::dense:
    case RewardVariant::deceptive:
      break;
  }
  const auto& t = spec.table;
  double r = t.per_step;
  bool picked = false;
  for (const auto& e : outcome.events) {
    switch (e.type) {
      case EventType::kill: r += t.kill; break;
      case EventType::attack: r += t.attack_hit; break;
      case EventType::collect: r += t.collect; break;
      case EventType::pickup: picked = true; break;
      case EventType::consume: r += e.value < 0.5 ? t.consume_needed : t.consume_full; break;
      case EventType::synthesize: r += t.synthesize; break;
      case EventType::equip: r += t.equip; break;
      case EventType::death: r += t.death; break;
      default: break;
    }
  }
  // one pickup action may draw from several cells; it scores once
  if (picked) r += t.pickup;
  if (outcome.result == ActionResult::failure) r += t.failed_action;
  return r;
}

double episode_return(std::span<const double> rewards, double gamma) {
  double total = 0;
  double discount = 1;
  for (double r : rewards) {
    total += discount * r;
    discount *= gamma;
  }
  return total;
}

}  // namespace eden
