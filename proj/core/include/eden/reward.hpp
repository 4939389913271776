#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eden/engine.hpp"

namespace eden {

enum class RewardVariant { dense, sparse, very_sparse, deceptive };

std::string_view to_string(RewardVariant v);
std::optional<RewardVariant> parse_reward_variant(std::string_view name);

struct RewardTable {
  double kill = 5;
  double attack_hit = 1;
  double collect = 1;
  double pickup = 1;
  double consume_needed = 5;  // relevant bar below half its cap
  double consume_full = -1;
  double synthesize = 3;
  double equip = 1;
  double failed_action = -1;
  double per_step = -0.01;
  double death = -10;

  bool operator==(const RewardTable&) const = default;
};

RewardTable dense_table();
RewardTable deceptive_table();

// (entry name, value) in declaration order; used for dumps and table diffs.
std::vector<std::pair<std::string, double>> entries(const RewardTable& t);

struct RewardSpec {
  RewardVariant variant = RewardVariant::dense;
  RewardTable table;
  double sparse_value = 1;
  double terminal_value = -1;
  std::vector<int> sparse_items;  // item ids whose consumption pays sparse_value
};

// Default spec for a variant; sparse items are meat and water from cfg.
RewardSpec reward_spec(RewardVariant variant, const WorldConfig& cfg);

// `done` is the episode end as seen by the caller, truncation included.
double compute_reward(const StepOutcome& outcome, bool done, const RewardSpec& spec);

double episode_return(std::span<const double> rewards, double gamma);

}  // namespace eden
