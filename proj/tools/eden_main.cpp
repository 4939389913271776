#include <CLI11.hpp>
#include <csignal>
#include <fstream>
#include <limits>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "eden/digest.hpp"
#include "eden/harness.hpp"
#include "eden/rollout.hpp"
#include "eden/service.hpp"

namespace {

using nlohmann::json;
using namespace eden;

// Domain failure with a machine-readable code for --json output.
struct CliError : std::runtime_error {
  CliError(std::string code, const std::string& message, json detail = nullptr)
      : std::runtime_error(message), code(std::move(code)), detail(std::move(detail)) {}
  std::string code;
  json detail;
};

const CLI::Range kPositive(1, std::numeric_limits<int>::max());
const CLI::Range kNonNegative(0, std::numeric_limits<int>::max());

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("io", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError("io", "cannot write " + path);
  out << text;
}

struct WorldArgs {
  std::string preset = "day_and_night";
  std::string config;
  int life_limit = 0;

  void add(CLI::App* app) {
    app->add_option("--preset", preset, "built-in world preset")->check(CLI::IsMember(preset_names()));
    app->add_option("--config", config, "world config JSON file (overrides --preset)");
    app->add_option("--life-limit", life_limit, "override life_limit")->check(kPositive);
  }

  WorldConfig load() const {
    WorldConfig cfg = config.empty() ? eden::preset(preset) : parse_config(read_file(config));
    if (life_limit > 0) {
      cfg.life_limit = life_limit;
      if (const auto v = validate(cfg); !v.empty()) throw ConfigError(ConfigError::Kind::validation, "invalid override", v);
    }
    return cfg;
  }
};

json stats_json(const Stats& s) {
  return {{"mean", s.mean}, {"median", s.median}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
}

json violations_json(const std::vector<Violation>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back({{"field", x.field}, {"rule", x.rule}});
  return out;
}

json optional_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_cdf_csv(const std::string& path, const std::vector<double>& mc, const std::vector<double>& analytic) {
  std::ostringstream out;
  out << "t,mc_cdf,analytic_cdf\n";
  const std::size_t n = std::max(mc.size(), analytic.size());
  for (std::size_t t = 0; t < n; ++t) {
    out << t << ',' << (t < mc.size() ? json(mc[t]).dump() : "") << ','
        << (t < analytic.size() ? json(analytic[t]).dump() : "") << '\n';
  }
  write_file(path, out.str());
}

struct TaskArgs {
  std::string task = "obtain_water";
  std::string world = "micro";
  std::uint64_t seed = 0;
  int threads = 1;

  void add(CLI::App* app) {
    app->add_option("--task", task, "task id")->check(CLI::IsMember(task_names()));
    std::vector<std::string> worlds{"micro", "micro_no_river"};
    for (const auto& p : preset_names()) worlds.push_back(p);
    app->add_option("--world", world, "micro, micro_no_river or a world preset")->check(CLI::IsMember(worlds));
    app->add_option("--seed", seed, "base seed");
    app->add_option("--threads", threads, "worker threads")->check(kNonNegative);
  }

  WorldConfig config() const {
    if (world == "micro") return micro_world_config(true);
    if (world == "micro_no_river") return micro_world_config(false);
    WorldConfig cfg = eden::preset(world);
    if (cfg.kind != WorldKind::survival) throw CliError("bad_world", "metrics need a survival world");
    return cfg;
  }
  bool analytic() const { return world == "micro"; }
};

json params_json(const AnalyticParams& p) {
  return {{"required_actions", p.required_actions},
          {"expected_moves", p.expected_moves},
          {"p_required", p.p_required},
          {"p_useless", p.p_useless},
          {"threshold", p.threshold}};
}

int run_ttmx(const TaskArgs& args, double th, int rollouts, int max_t, int bound, const std::string& csv) {
  const WorldConfig cfg = args.config();
  const TaskSpec task = named_task(args.task);
  RolloutOptions ro;
  ro.rollouts = rollouts;
  ro.max_t = max_t;
  ro.base_seed = args.seed;
  ro.threads = args.threads;
  const auto mc = ttmx_monte_carlo(config_factory(cfg), task, th, ro);
  const auto search = ttmn_search(config_factory(cfg), task, ro.preset, bound, args.seed);

  json report = {{"kind", "ttmx"},
                 {"task", args.task},
                 {"world", args.world},
                 {"action_preset", to_string(ro.preset)},
                 {"threshold", th},
                 {"rollouts", rollouts},
                 {"max_t", max_t},
                 {"base_seed", args.seed},
                 {"completions", mc.completions},
                 {"mc_ttmx", optional_json(mc.ttmx)},
                 {"mc_ci", {{"low", optional_json(mc.ci_low)}, {"high", optional_json(mc.ci_high)}, {"dkw_epsilon", mc.dkw_epsilon}}},
                 {"mc_ttmn", optional_json(search)},
                 {"ttmn_bound", bound},
                 {"ttmn_hat", nullptr},
                 {"ttmx_hat", nullptr},
                 {"cdf", mc.cdf}};
  std::vector<double> analytic_cdf;
  if (args.analytic()) {
    const AnalyticParams p = micro_world_params(ro.preset, th);
    report["params"] = params_json(p);
    report["ttmn_hat"] = estimate_ttmn(p.required_actions, p.expected_moves);
    analytic_cdf = first_completion_cdf_series(p, max_t);
    report["analytic_cdf"] = analytic_cdf;
    try {
      report["ttmx_hat"] = ttmx_analytic(p, max_t);
    } catch (const UnreachableThreshold& e) {
      report["analytic_error"] = e.what();
    }
  }
  if (!csv.empty()) write_cdf_csv(csv, mc.cdf, analytic_cdf);
  print(report);
  if (!mc.reachable()) {
    throw CliError("unreachable_threshold", "fewer than th*rollouts completions by max_t",
                   {{"completions", mc.completions}, {"rollouts", rollouts}});
  }
  return 0;
}

int run_ttmn(const TaskArgs& args, int bound) {
  const WorldConfig cfg = args.config();
  const auto found = ttmn_search(config_factory(cfg), named_task(args.task), ActPreset::baseline9, bound, args.seed);
  json report = {{"kind", "ttmn"}, {"task", args.task}, {"world", args.world}, {"bound", bound}, {"mc_ttmn", optional_json(found)}};
  if (args.analytic()) {
    const AnalyticParams p = micro_world_params(ActPreset::baseline9, 0.95);
    report["ttmn_hat"] = estimate_ttmn(p.required_actions, p.expected_moves);
  }
  print(report);
  if (!found) throw CliError("none_found", "no completing sequence within bound", {{"bound", bound}});
  return 0;
}

int run_pic(const TaskArgs& args, int goals, int policies, int episodes, int bins, double th, int rollouts,
            int bound, const std::string& csv) {
  const WorldConfig cfg = args.config();
  const TaskSpec task = named_task(args.task);
  const auto factory = config_factory(cfg);
  const auto ttmn = ttmn_search(factory, task, ActPreset::baseline9, bound, args.seed);
  if (!ttmn) throw CliError("none_found", "no completing sequence within bound", {{"bound", bound}});
  RolloutOptions ro;
  ro.rollouts = rollouts;
  ro.max_t = task.max_horizon;
  ro.base_seed = args.seed;
  ro.threads = args.threads;
  const auto mc = ttmx_monte_carlo(factory, task, th, ro);
  if (!mc.ttmx) throw CliError("unreachable_threshold", "random policy never reaches the threshold");
  const GoalLadder ladder = goal_ladder(*ttmn, *mc.ttmx, goals);
  PicOptions po;
  po.policies = policies;
  po.episodes = episodes;
  po.bins = bins;
  po.base_seed = args.seed;
  po.threads = args.threads;
  const PicResult pic = pic_over_goals(factory, task, ladder, po);

  json goals_json = json::array();
  for (std::size_t i = 0; i < ladder.goals.size(); ++i) {
    goals_json.push_back({{"level", ladder.goals[i].level}, {"deadline", ladder.goals[i].deadline}, {"pic", pic.pic[i]}});
  }
  print({{"kind", "pic"},
         {"task", args.task},
         {"world", args.world},
         {"threshold", th},
         {"mc_ttmn", *ttmn},
         {"mc_ttmx", *mc.ttmx},
         {"breakpoints", ladder.breakpoints},
         {"policies", policies},
         {"episodes", episodes},
         {"bins", bins},
         {"base_seed", args.seed},
         {"goals", goals_json}});
  if (!csv.empty()) {
    std::ostringstream out;
    out << "level,deadline,pic\n";
    for (std::size_t i = 0; i < ladder.goals.size(); ++i) {
      out << ladder.goals[i].level << ',' << ladder.goals[i].deadline << ',' << json(pic.pic[i]).dump() << '\n';
    }
    write_file(csv, out.str());
  }
  return 0;
}

std::atomic<bool> g_stop{false};
extern "C" void on_signal(int) { g_stop = true; }

int serve(const ServerOptions& options) {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  Server server(options);
  server.start();
  std::cerr << "eden: listening on " << options.host << ':' << server.port() << std::endl;
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  return 0;
}

void report_error(bool as_json, const std::string& code, const std::string& message, const json& detail) {
  std::cerr << "eden: " << message << '\n';
  if (detail.is_array()) {
    for (const auto& v : detail) std::cerr << "  " << v.at("field").get<std::string>() << ": " << v.at("rule").get<std::string>() << '\n';
  }
  if (as_json) {
    json j = {{"error", code}, {"message", message}};
    if (!detail.is_null()) j["detail"] = detail;
    std::cerr << j.dump() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eden: grid survival worlds, harness, difficulty metrics and TCP server"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "append a JSON error object to stderr on failure");

  std::function<int()> action;

  auto* validate_cmd = app.add_subcommand("validate", "check a world config file");
  std::string validate_path;
  validate_cmd->add_option("config", validate_path, "config JSON file")->required();
  validate_cmd->callback([&] {
    action = [&] {
      const WorldConfig cfg = parse_config(read_file(validate_path));
      print({{"ok", true}, {"name", cfg.name}, {"config_digest", to_hex(config_digest(cfg))}});
      return 0;
    };
  });

  auto* run_cmd = app.add_subcommand("run", "run episodes through the harness");
  WorldArgs run_world;
  run_world.add(run_cmd);
  std::string obs_name = "baseline", act_name = "baseline9", reward_name = "dense", policy_name = "idle";
  std::uint64_t policy_seed = 0, base_seed = 0;
  int episodes = 1, max_steps = 0, parallelism = 1;
  std::string log_path, csv_path, aggregate_path;
  run_cmd->add_option("--obs", obs_name, "observation preset")
      ->check(CLI::IsMember({"raw", "baseline", "pigs10", "all10", "native"}));
  std::vector<std::string> act_names;
  for (auto p : all_act_presets()) act_names.emplace_back(to_string(p));
  run_cmd->add_option("--act", act_name, "action preset")->check(CLI::IsMember(act_names));
  run_cmd->add_option("--reward", reward_name, "reward variant")
      ->check(CLI::IsMember({"dense", "sparse", "very_sparse", "deceptive"}));
  run_cmd->add_option("--policy", policy_name, "built-in policy")
      ->check(CLI::IsMember({"idle", "random", "scripted_survival", "nav_greedy", "random_logit"}));
  run_cmd->add_option("--policy-seed", policy_seed, "seed for random policies");
  run_cmd->add_option("--episodes", episodes, "episode count")->check(kPositive);
  run_cmd->add_option("--seed", base_seed, "first episode seed; episode i uses seed+i");
  run_cmd->add_option("--max-steps", max_steps, "truncate episodes after this many steps")->check(kPositive);
  run_cmd->add_option("--parallelism", parallelism, "worker threads")->check(kPositive);
  run_cmd->add_option("--log", log_path, "write JSON-lines episode logs");
  run_cmd->add_option("--csv", csv_path, "write per-episode CSV");
  run_cmd->add_option("--aggregate-csv", aggregate_path, "write aggregate CSV");
  run_cmd->callback([&] {
    action = [&] {
      const WorldConfig cfg = run_world.load();
      RunOptions ro;
      ro.bundle = {*parse_obs_preset(obs_name), *parse_act_preset(act_name), *parse_reward_variant(reward_name)};
      if (cfg.kind == WorldKind::navigation) ro.bundle = native_bundle();
      if (max_steps > 0) ro.max_steps = max_steps;
      std::vector<std::uint64_t> seeds;
      for (int i = 0; i < episodes; ++i) seeds.push_back(base_seed + static_cast<std::uint64_t>(i));
      const auto batch = run_batch(cfg, seeds, ro, {*parse_policy_kind(policy_name), policy_seed}, parallelism);
      if (!log_path.empty()) {
        std::ostringstream out;
        for (const auto& r : batch.records) write_jsonl(r, out);
        write_file(log_path, out.str());
      }
      if (!csv_path.empty()) {
        std::ostringstream out;
        write_episode_csv(batch, out);
        write_file(csv_path, out.str());
      }
      if (!aggregate_path.empty()) {
        std::ostringstream out;
        write_aggregate_csv(batch, out);
        write_file(aggregate_path, out.str());
      }
      json per = json::array();
      for (const auto& r : batch.records) {
        per.push_back({{"seed", r.seed}, {"lifetime", r.summary.lifetime}, {"total_reward", r.summary.total_reward},
                       {"cause", r.summary.cause}});
      }
      print({{"config", cfg.name},
             {"config_digest", to_hex(config_digest(cfg))},
             {"policy", policy_name},
             {"obs", to_string(ro.bundle.obs)},
             {"act", to_string(ro.bundle.act)},
             {"reward", to_string(ro.bundle.reward)},
             {"episodes", per},
             {"lifetime", stats_json(batch.lifetime)},
             {"total_reward", stats_json(batch.total_reward)}});
      return 0;
    };
  });

  auto* replay_cmd = app.add_subcommand("replay", "re-execute a JSON-lines log and compare digests");
  WorldArgs replay_world;
  replay_world.add(replay_cmd);
  std::string replay_path;
  replay_cmd->add_option("log", replay_path, "log file")->required();
  replay_cmd->callback([&] {
    action = [&] {
      const WorldConfig cfg = replay_world.load();
      std::istringstream in(read_file(replay_path));
      const auto records = read_jsonl(in);
      json results = json::array();
      bool ok = true;
      for (const auto& r : records) {
        const auto rep = replay(cfg, r);
        ok = ok && rep.ok;
        results.push_back({{"seed", r.seed}, {"ok", rep.ok}, {"mismatched_step", rep.mismatched_step}, {"detail", rep.detail}});
      }
      print({{"ok", ok}, {"episodes", results}});
      if (!ok) throw CliError("replay_mismatch", "replay diverged from the log");
      return 0;
    };
  });

  auto* metrics_cmd = app.add_subcommand("metrics", "task difficulty metrics");
  metrics_cmd->require_subcommand(1);
  TaskArgs ttmx_args, ttmn_args, pic_args;
  double th = 0.95, pic_th = 0.95;
  int rollouts = 10000, max_t = 1000, ttmx_bound = 4, ttmn_bound = 4, pic_bound = 4;
  int goals = 4, policies = 16, pic_episodes = 32, bins = 2, pic_rollouts = 10000;
  std::string ttmx_csv, pic_csv;

  auto* ttmx_cmd = metrics_cmd->add_subcommand("ttmx", "analytic and Monte-Carlo random-policy completion time");
  ttmx_args.add(ttmx_cmd);
  ttmx_cmd->add_option("--th", th, "threshold in [0.9, 1)")->check(CLI::Range(0.0, 1.0));
  ttmx_cmd->add_option("--rollouts", rollouts, "Monte-Carlo rollouts")->check(kPositive);
  ttmx_cmd->add_option("--max-t", max_t, "censoring horizon")->check(kPositive);
  ttmx_cmd->add_option("--bound", ttmx_bound, "search depth for the exact minimum")->check(kNonNegative);
  ttmx_cmd->add_option("--csv", ttmx_csv, "write CDF samples as CSV");
  ttmx_cmd->callback([&] { action = [&] { return run_ttmx(ttmx_args, th, rollouts, max_t, ttmx_bound, ttmx_csv); }; });

  auto* ttmn_cmd = metrics_cmd->add_subcommand("ttmn", "shortest completing action sequence");
  ttmn_args.add(ttmn_cmd);
  ttmn_cmd->add_option("--bound", ttmn_bound, "search depth")->check(kNonNegative);
  ttmn_cmd->callback([&] { action = [&] { return run_ttmn(ttmn_args, ttmn_bound); }; });

  auto* pic_cmd = metrics_cmd->add_subcommand("pic", "policy information capacity per goal level");
  pic_args.add(pic_cmd);
  pic_cmd->add_option("--goals", goals, "goal levels")->check(CLI::Range(2, 1000));
  pic_cmd->add_option("--policies", policies, "sampled policies")->check(kPositive);
  pic_cmd->add_option("--episodes", pic_episodes, "episodes per policy")->check(kPositive);
  pic_cmd->add_option("--bins", bins, "histogram bins")->check(CLI::Range(2, 1 << 20));
  pic_cmd->add_option("--th", pic_th, "threshold for the upper ladder end")->check(CLI::Range(0.0, 1.0));
  pic_cmd->add_option("--rollouts", pic_rollouts, "rollouts for the upper ladder end")->check(kPositive);
  pic_cmd->add_option("--bound", pic_bound, "search depth for the lower ladder end")->check(kNonNegative);
  pic_cmd->add_option("--csv", pic_csv, "write per-goal CSV");
  pic_cmd->callback([&] {
    action = [&] {
      return run_pic(pic_args, goals, policies, pic_episodes, bins, pic_th, pic_rollouts, pic_bound, pic_csv);
    };
  });

  auto* obs_cmd = app.add_subcommand("describe-obs", "observation layout as JSON");
  WorldArgs obs_world;
  obs_world.add(obs_cmd);
  std::string describe_obs = "baseline";
  obs_cmd->add_option("--obs", describe_obs, "observation preset")
      ->check(CLI::IsMember({"raw", "baseline", "pigs10", "all10", "native"}));
  obs_cmd->callback([&] {
    action = [&] {
      const WorldConfig cfg = obs_world.load();
      const ObsPreset p = *parse_obs_preset(describe_obs);
      json fields = json::array();
      for (const auto& f : layout_table(cfg, p)) fields.push_back({{"offset", f.offset}, {"name", f.name}});
      print({{"config", cfg.name}, {"obs", describe_obs}, {"dim", dimension(cfg, p)}, {"fields", fields}});
      return 0;
    };
  });

  auto* act_cmd = app.add_subcommand("describe-actions", "action presets as JSON");
  std::string describe_act;
  act_cmd->add_option("--act", describe_act, "only this preset")->check(CLI::IsMember(act_names));
  act_cmd->callback([&] {
    action = [&] {
      json out = json::array();
      for (const auto& c : preset_catalog()) {
        if (!describe_act.empty() && to_string(c.preset) != describe_act) continue;
        out.push_back({{"act", to_string(c.preset)}, {"count", c.names.size()}, {"actions", c.names}});
      }
      print(out);
      return 0;
    };
  });

  auto* cfg_cmd = app.add_subcommand("describe-config", "print a world config as JSON");
  WorldArgs cfg_world;
  cfg_world.add(cfg_cmd);
  cfg_cmd->callback([&] {
    action = [&] {
      std::cout << serialize_config(cfg_world.load()) << '\n';
      return 0;
    };
  });

  auto* reward_cmd = app.add_subcommand("describe-reward", "reward table as JSON");
  std::string describe_reward = "dense";
  reward_cmd->add_option("--reward", describe_reward, "reward variant")
      ->check(CLI::IsMember({"dense", "sparse", "very_sparse", "deceptive"}));
  reward_cmd->callback([&] {
    action = [&] {
      const RewardSpec spec = reward_spec(*parse_reward_variant(describe_reward), eden::preset("day_and_night"));
      json table = json::object();
      for (const auto& [name, value] : entries(spec.table)) table[name] = value;
      print({{"reward", describe_reward},
             {"table", table},
             {"sparse_value", spec.sparse_value},
             {"terminal_value", spec.terminal_value}});
      return 0;
    };
  });

  auto* serve_cmd = app.add_subcommand("serve", "run the TCP environment server");
  ServerOptions server_options;
  serve_cmd->add_option("--host", server_options.host, "bind address");
  serve_cmd->add_option("--port", server_options.port, "TCP port, 0 picks a free one");
  serve_cmd->add_option("--max-sessions", server_options.max_sessions, "concurrent sessions")->check(kPositive);
  serve_cmd->add_option("--idle-timeout-ms", server_options.idle_timeout_ms, "idle session timeout")
      ->check(kPositive);
  serve_cmd->callback([&] { action = [&] { return serve(server_options); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (as_json) std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    report_error(as_json, "config", e.what(), violations_json(e.violations()));
  } catch (const CliError& e) {
    report_error(as_json, e.code, e.what(), e.detail);
  } catch (const GenerationError& e) {
    report_error(as_json, "generation", e.what(), nullptr);
  } catch (const std::system_error& e) {
    report_error(as_json, "system", e.what(), nullptr);
  } catch (const std::exception& e) {
    report_error(as_json, "error", e.what(), nullptr);
  }
  return 1;
}
