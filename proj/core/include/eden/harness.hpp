#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eden/env.hpp"

namespace eden {

inline constexpr int kLogSchemaVersion = 1;

enum class PolicyKind { idle, random, scripted_survival, nav_greedy, random_logit };

std::string_view to_string(PolicyKind k);
std::optional<PolicyKind> parse_policy_kind(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::idle;
  std::uint64_t seed = 0;  // random kinds only

  bool operator==(const PolicySpec&) const = default;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_episode(std::uint64_t episode_seed) = 0;
  virtual EnvAction act(const Environment& env, const std::vector<double>& obs) = 0;
};

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const Environment& env);

// Rule chain over baseline9 indices; the world must be a survival world.
int scripted_survival(const World& world);

// Greedy offset toward the goal, clipped to the per-step limit.
std::array<double, 2> nav_greedy(const NavObservation& obs, Position goal, int max_offset = 2);

struct StepRecord {
  int t = 0;
  int action = 0;
  double ox = 0;
  double oy = 0;
  ActionCommand command;
  DecodeNote note = DecodeNote::direct;
  double reward = 0;
  bool done = false;
  std::vector<std::string> events;  // "type:item:count"
  std::uint64_t obs_digest = 0;

  bool operator==(const StepRecord&) const = default;
};

struct EpisodeSummary {
  std::int64_t lifetime = 0;
  double total_reward = 0;
  std::string cause;  // death cause, "horizon" or "goal"

  bool operator==(const EpisodeSummary&) const = default;
};

struct EpisodeRecord {
  std::uint64_t config_digest = 0;
  std::string config_name;
  std::uint64_t seed = 0;
  Bundle bundle;
  PolicySpec policy;
  std::optional<int> max_steps;
  std::uint64_t reset_digest = 0;
  std::vector<StepRecord> steps;
  EpisodeSummary summary;

  bool operator==(const EpisodeRecord&) const = default;
};

struct RunOptions {
  Bundle bundle;
  std::optional<int> max_steps;
};

EpisodeRecord run_episode(const WorldConfig& cfg, std::uint64_t seed, const RunOptions& options,
                          const PolicySpec& policy);

struct Stats {
  double mean = 0;
  double median = 0;
  double stddev = 0;  // population
  double min = 0;
  double max = 0;

  bool operator==(const Stats&) const = default;
};

Stats summarize(std::vector<double> values);

struct BatchResult {
  std::vector<EpisodeRecord> records;  // in seed order
  Stats lifetime;
  Stats total_reward;
};

BatchResult run_batch(const WorldConfig& cfg, const std::vector<std::uint64_t>& seeds, const RunOptions& options,
                      const PolicySpec& policy, int parallelism = 1);

// JSON-lines: a header, one line per step, then a summary line.
void write_jsonl(const EpisodeRecord& record, std::ostream& out);
std::vector<EpisodeRecord> read_jsonl(std::istream& in);

struct ReplayReport {
  bool ok = true;
  int mismatched_step = -1;  // first step whose reward, digest or flags differ
  std::string detail;
};

// Re-executes the recorded actions on a fresh world with the recorded seed.
ReplayReport replay(const WorldConfig& cfg, const EpisodeRecord& record);

void write_episode_csv(const BatchResult& batch, std::ostream& out);
void write_aggregate_csv(const BatchResult& batch, std::ostream& out);

std::string event_summary(const Event& e);

}  // namespace eden
