#include "eden/harness.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <thread>

#include "eden/digest.hpp"

namespace eden {

using nlohmann::json;

namespace {

std::string cause_of(const Transition& tr) {
  if (tr.truncated) return "horizon";
  if (tr.cause != DeathCause::none) return std::string(to_string(tr.cause));
  return "goal";
}

}  // namespace

std::string event_summary(const Event& e) {
  return std::string(to_string(e.type)) + ":" + std::to_string(e.item) + ":" + std::to_string(e.count);
}

EpisodeRecord run_episode(const WorldConfig& cfg, std::uint64_t seed, const RunOptions& options,
                          const PolicySpec& policy_spec) {
  auto env = make_env(cfg, options.bundle, options.max_steps);
  auto policy = make_policy(policy_spec, *env);
  EpisodeRecord rec;
  rec.config_digest = config_digest(cfg);
  rec.config_name = cfg.name;
  rec.seed = seed;
  rec.bundle = env->bundle();
  rec.policy = policy_spec;
  rec.max_steps = options.max_steps;

  std::vector<double> obs = env->reset(seed);
  rec.reset_digest = digest_values(obs);
  policy->begin_episode(seed);
  Transition tr;
  while (!env->done()) {
    const EnvAction action = policy->act(*env, obs);
    tr = env->step(action);
    StepRecord s;
    s.t = static_cast<int>(rec.steps.size()) + 1;
    s.action = action.index;
    s.ox = action.ox;
    s.oy = action.oy;
    s.command = tr.decoded.command;
    s.note = tr.decoded.note;
    s.reward = tr.reward;
    s.done = tr.done;
    for (const auto& e : tr.events) s.events.push_back(event_summary(e));
    s.obs_digest = digest_values(tr.obs);
    rec.summary.total_reward += tr.reward;
    rec.steps.push_back(std::move(s));
    obs = std::move(tr.obs);
  }
  rec.summary.lifetime = static_cast<std::int64_t>(rec.steps.size());
  rec.summary.cause = cause_of(tr);
  if (const NavState* nav = env->nav_state()) {
    rec.summary.cause = std::sqrt(goal_dist2(*nav)) < nav->tolerance ? "goal" : "horizon";
  }
  return rec;
}

Stats summarize(std::vector<double> values) {
  Stats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  s.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
  double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(n));
  s.min = values.front();
  s.max = values.back();
  return s;
}

BatchResult run_batch(const WorldConfig& cfg, const std::vector<std::uint64_t>& seeds, const RunOptions& options,
                      const PolicySpec& policy, int parallelism) {
  if (seeds.empty()) throw std::invalid_argument("run_batch needs at least one seed");
  BatchResult out;
  out.records.resize(seeds.size());
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(parallelism, 1)), 1, seeds.size());
  std::vector<std::exception_ptr> errors(workers);
  const auto work = [&](std::size_t w) {
    try {
      for (std::size_t i = w; i < seeds.size(); i += workers) out.records[i] = run_episode(cfg, seeds[i], options, policy);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<double> lifetimes, rewards;
  for (const auto& r : out.records) {
    lifetimes.push_back(static_cast<double>(r.summary.lifetime));
    rewards.push_back(r.summary.total_reward);
  }
  out.lifetime = summarize(std::move(lifetimes));
  out.total_reward = summarize(std::move(rewards));
  return out;
}

void write_jsonl(const EpisodeRecord& rec, std::ostream& out) {
  json header = {{"kind", "header"},
                 {"schema_version", kLogSchemaVersion},
                 {"config", rec.config_name},
                 {"config_digest", to_hex(rec.config_digest)},
                 {"seed", rec.seed},
                 {"rng", Rng::kAlgorithm},
                 {"obs", to_string(rec.bundle.obs)},
                 {"act", to_string(rec.bundle.act)},
                 {"reward", to_string(rec.bundle.reward)},
                 {"policy", to_string(rec.policy.kind)},
                 {"policy_seed", rec.policy.seed},
                 {"max_steps", rec.max_steps ? json(*rec.max_steps) : json(nullptr)},
                 {"reset_digest", to_hex(rec.reset_digest)}};
  out << header.dump() << '\n';
  for (const auto& s : rec.steps) {
    json line = {{"kind", "step"},
                 {"t", s.t},
                 {"action", s.action},
                 {"command", {to_string(s.command.id), s.command.p1, s.command.p2}},
                 {"note", to_string(s.note)},
                 {"reward", s.reward},
                 {"done", s.done},
                 {"events", s.events},
                 {"obs_digest", to_hex(s.obs_digest)}};
    if (s.ox != 0 || s.oy != 0) line["offset"] = {s.ox, s.oy};
    out << line.dump() << '\n';
  }
  json summary = {{"kind", "summary"},
                  {"lifetime", rec.summary.lifetime},
                  {"total_reward", rec.summary.total_reward},
                  {"cause", rec.summary.cause}};
  out << summary.dump() << '\n';
}

std::vector<EpisodeRecord> read_jsonl(std::istream& in) {
  std::vector<EpisodeRecord> out;
  std::string line;
  int line_no = 0;
  EpisodeRecord* cur = nullptr;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("log line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "header") {
      if (j.at("schema_version").get<int>() != kLogSchemaVersion) {
        throw std::runtime_error("log line " + std::to_string(line_no) + ": unsupported schema_version");
      }
      EpisodeRecord rec;
      rec.config_name = j.value("config", "");
      rec.config_digest = from_hex(j.at("config_digest").get<std::string>());
      rec.seed = j.at("seed").get<std::uint64_t>();
      const auto obs = parse_obs_preset(j.at("obs").get<std::string>());
      const auto act = parse_act_preset(j.at("act").get<std::string>());
      const auto reward = parse_reward_variant(j.at("reward").get<std::string>());
      const auto policy = parse_policy_kind(j.at("policy").get<std::string>());
      if (!obs || !act || !reward || !policy) {
        throw std::runtime_error("log line " + std::to_string(line_no) + ": unknown preset name");
      }
      rec.bundle = {*obs, *act, *reward};
      rec.policy = {*policy, j.at("policy_seed").get<std::uint64_t>()};
      if (!j.at("max_steps").is_null()) rec.max_steps = j.at("max_steps").get<int>();
      rec.reset_digest = from_hex(j.at("reset_digest").get<std::string>());
      out.push_back(std::move(rec));
      cur = &out.back();
      continue;
    }
    if (!cur) throw std::runtime_error("log line " + std::to_string(line_no) + ": record before header");
    if (kind == "step") {
      StepRecord s;
      s.t = j.at("t").get<int>();
      s.action = j.at("action").get<int>();
      if (j.contains("offset")) {
        s.ox = j["offset"][0].get<double>();
        s.oy = j["offset"][1].get<double>();
      }
      const auto& c = j.at("command");
      const auto id = parse_action_id(c.at(0).get<std::string>());
      if (!id) throw std::runtime_error("log line " + std::to_string(line_no) + ": unknown command");
      s.command = {*id, c.at(1).get<int>(), c.at(2).get<int>()};
      const std::string note = j.at("note").get<std::string>();
      s.note = note == "approach" ? DecodeNote::approach : note == "untargeted" ? DecodeNote::untargeted : DecodeNote::direct;
      s.reward = j.at("reward").get<double>();
      s.done = j.at("done").get<bool>();
      s.events = j.at("events").get<std::vector<std::string>>();
      s.obs_digest = from_hex(j.at("obs_digest").get<std::string>());
      cur->steps.push_back(std::move(s));
    } else if (kind == "summary") {
      cur->summary.lifetime = j.at("lifetime").get<std::int64_t>();
      cur->summary.total_reward = j.at("total_reward").get<double>();
      cur->summary.cause = j.at("cause").get<std::string>();
      cur = nullptr;
    } else {
      throw std::runtime_error("log line " + std::to_string(line_no) + ": unknown record kind \"" + kind + "\"");
    }
  }
  return out;
}

ReplayReport replay(const WorldConfig& cfg, const EpisodeRecord& rec) {
  ReplayReport rep;
  const auto fail = [&](int t, std::string why) {
    rep.ok = false;
    rep.mismatched_step = t;
    rep.detail = std::move(why);
    return rep;
  };
  if (config_digest(cfg) != rec.config_digest) return fail(0, "config digest differs");
  auto env = make_env(cfg, rec.bundle, rec.max_steps);
  if (digest_values(env->reset(rec.seed)) != rec.reset_digest) return fail(0, "reset observation differs");
  for (const auto& s : rec.steps) {
    if (env->done()) return fail(s.t, "episode ended early");
    const Transition tr = env->step({s.action, s.ox, s.oy});
    if (tr.reward != s.reward) return fail(s.t, "reward differs");
    if (tr.done != s.done) return fail(s.t, "done flag differs");
    if (digest_values(tr.obs) != s.obs_digest) return fail(s.t, "observation digest differs");
    if (!(tr.decoded.command == s.command)) return fail(s.t, "decoded command differs");
  }
  if (!env->done()) return fail(static_cast<int>(rec.steps.size()), "episode did not end");
  return rep;
}

void write_episode_csv(const BatchResult& batch, std::ostream& out) {
  out << "seed,lifetime,total_reward,cause\n";
  for (const auto& r : batch.records) {
    out << r.seed << ',' << r.summary.lifetime << ',' << json(r.summary.total_reward).dump() << ','
        << r.summary.cause << '\n';
  }
}

void write_aggregate_csv(const BatchResult& batch, std::ostream& out) {
  out << "metric,mean,median,stddev,min,max,episodes\n";
  const auto row = [&](const char* name, const Stats& s) {
    out << name << ',' << json(s.mean).dump() << ',' << json(s.median).dump() << ',' << json(s.stddev).dump() << ','
        << json(s.min).dump() << ',' << json(s.max).dump() << ',' << batch.records.size() << '\n';
  };
  row("lifetime", batch.lifetime);
  row("total_reward", batch.total_reward);
}

}  // namespace eden
