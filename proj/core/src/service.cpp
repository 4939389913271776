#include "eden/service.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <iterator>
#include <nlohmann/json.hpp>
#include <system_error>

#include "eden/digest.hpp"
#include "eden/harness.hpp"

namespace eden {

using nlohmann::json;

namespace {

struct ProtocolError {
  std::string code;
  std::string message;
};

json error_json(const std::string& code, const std::string& message, json seq) {
  return {{"ok", false}, {"error", code}, {"message", message}, {"seq", std::move(seq)}};
}

WorldConfig build_config(const json& req) {
  WorldConfig cfg;
  try {
    if (req.contains("config")) {
      if (!req["config"].is_object()) throw ProtocolError{"bad_preset", "config must be an object"};
      cfg = parse_config(req["config"].dump());
    } else {
      const std::string name = req.value("preset", "day_and_night");
      cfg = preset(name);
    }
    if (req.contains("overrides")) {
      if (!req["overrides"].is_object()) throw ProtocolError{"bad_preset", "overrides must be an object"};
      json doc = json::parse(serialize_config(cfg));
      doc.merge_patch(req["overrides"]);
      cfg = parse_config(doc.dump());
    }
  } catch (const ConfigError& e) {
    throw ProtocolError{"bad_preset", e.what()};
  } catch (const std::invalid_argument& e) {
    throw ProtocolError{"bad_preset", e.what()};
  }
  return cfg;
}

template <class Parse>
auto preset_field(const json& req, const char* key, const char* fallback, Parse parse) {
  const json& v = req.contains(key) ? req[key] : json(fallback);
  if (!v.is_string()) throw ProtocolError{"bad_preset", std::string(key) + " must be a string"};
  const auto parsed = parse(v.get<std::string>());
  if (!parsed) throw ProtocolError{"bad_preset", "unknown " + std::string(key) + " preset \"" + v.get<std::string>() + "\""};
  return *parsed;
}

json describe_env(const Session& s) {
  const Environment& env = *s.env;
  json d = {{"config", s.config_name},
            {"kind", to_string(env.config().kind)},
            {"obs", to_string(env.bundle().obs)},
            {"dim", env.obs_dim()},
            {"n_actions", env.action_count()},
            {"max_steps", env.max_steps() ? json(*env.max_steps()) : json(nullptr)},
            {"config_digest", to_hex(config_digest(env.config()))}};
  if (env.config().kind == WorldKind::survival) {
    d["act"] = to_string(env.bundle().act);
    d["reward"] = to_string(env.bundle().reward);
    json names = json::array();
    for (const auto& a : actions(env.bundle().act)) names.push_back(a.name);
    d["actions"] = names;
  } else {
    d["act"] = "offset";
    d["reward"] = "distance";
  }
  return d;
}

void make_world(Session& s, const json& req) {
  WorldConfig cfg = build_config(req);
  Bundle bundle;
  if (cfg.kind == WorldKind::survival) {
    bundle.obs = preset_field(req, "obs", "baseline", parse_obs_preset);
    bundle.act = preset_field(req, "act", "baseline9", parse_act_preset);
    bundle.reward = preset_field(req, "reward", "dense", parse_reward_variant);
  } else {
    bundle = native_bundle();
  }
  std::optional<int> max_steps;
  if (req.contains("max_steps") && !req["max_steps"].is_null()) {
    if (!req["max_steps"].is_number_integer() || req["max_steps"].get<long long>() < 1) {
      throw ProtocolError{"bad_preset", "max_steps must be a positive integer"};
    }
    max_steps = req["max_steps"].get<int>();
  }
  try {
    s.env = make_env(cfg, bundle, max_steps);
  } catch (const std::invalid_argument& e) {
    throw ProtocolError{"bad_preset", e.what()};
  }
  s.config_name = cfg.name;
}

json transition_json(const Transition& tr, bool nav) {
  json events = json::array();
  for (const auto& e : tr.events) events.push_back(event_summary(e));
  json info = {{"lifetime", tr.lifetime},
               {"truncated", tr.truncated},
               {"events", events},
               {"obs_digest", to_hex(digest_values(tr.obs))}};
  if (nav) {
    info["applied"] = {tr.applied[0], tr.applied[1]};
  } else {
    info["cause"] = to_string(tr.cause);
    info["command"] = {to_string(tr.decoded.command.id), tr.decoded.command.p1, tr.decoded.command.p2};
    info["note"] = to_string(tr.decoded.note);
    info["result"] = tr.result == ActionResult::success ? "success" : "failure";
  }
  return {{"ok", true}, {"obs", tr.obs}, {"reward", tr.reward}, {"done", tr.done}, {"info", info}};
}

EnvAction parse_action(const Environment& env, const json& req) {
  if (!req.contains("action")) throw ProtocolError{"bad_action", "missing action"};
  const json& a = req["action"];
  if (env.action_count() > 0) {
    if (!a.is_number_integer()) throw ProtocolError{"bad_action", "action must be an integer index"};
    const long long idx = a.get<long long>();
    if (idx < 0 || idx >= env.action_count()) {
      throw ProtocolError{"bad_action", "action " + std::to_string(idx) + " outside [0, " +
                                            std::to_string(env.action_count()) + ")"};
    }
    return {static_cast<int>(idx), 0, 0};
  }
  if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
    throw ProtocolError{"bad_action", "navigation action must be [ox, oy]"};
  }
  return {0, a[0].get<double>(), a[1].get<double>()};
}

json dispatch(Session& s, const json& req) {
  if (!req.contains("op") || !req["op"].is_string()) throw ProtocolError{"unknown_op", "missing op"};
  const std::string op = req["op"].get<std::string>();
  if (op == "hello") {
    const int version = req.value("version", kProtocolVersion);
    if (version != kProtocolVersion) {
      throw ProtocolError{"bad_version", "server speaks protocol version " + std::to_string(kProtocolVersion)};
    }
    return {{"ok", true}, {"version", kProtocolVersion}, {"session", s.id}};
  }
  if (op == "make") {
    make_world(s, req);
    json r = describe_env(s);
    r["ok"] = true;
    return r;
  }
  if (op == "reset") {
    if (!s.env) make_world(s, json::object());
    std::uint64_t seed = 0;
    if (req.contains("seed")) {
      if (!req["seed"].is_number_unsigned()) throw ProtocolError{"bad_json", "seed must be a non-negative integer"};
      seed = req["seed"].get<std::uint64_t>();
    }
    std::vector<double> obs;
    try {
      obs = s.env->reset(seed);
    } catch (const GenerationError& e) {
      throw ProtocolError{"bad_preset", e.what()};
    }
    const int dim = s.env->obs_dim();
    return {{"ok", true},
            {"obs", obs},
            {"dim", dim},
            {"info", {{"seed", seed}, {"obs_digest", to_hex(digest_values(obs))}}}};
  }
  if (op == "step") {
    if (!s.env || !s.env->ready()) throw ProtocolError{"no_world", "call make/reset before step"};
    if (s.env->done()) throw ProtocolError{"done_world", "episode is over; reset to continue"};
    const EnvAction action = parse_action(*s.env, req);
    return transition_json(s.env->step(action), s.env->config().kind == WorldKind::navigation);
  }
  if (op == "describe") {
    json r = {{"ok", true}, {"version", kProtocolVersion}, {"ops", {"hello", "make", "reset", "step", "describe", "close"}}};
    r["world"] = s.env ? describe_env(s) : json(nullptr);
    return r;
  }
  if (op == "close") {
    s.closing = true;
    return {{"ok", true}};
  }
  throw ProtocolError{"unknown_op", "unknown op \"" + op + "\""};
}

}  // namespace

std::string handle_message(Session& s, std::string_view line) {
  const std::uint64_t counter = ++s.seq;
  if (line.size() > kMaxLineBytes) return error_json("bad_json", "line exceeds 1 MiB", counter).dump();
  json req;
  try {
    req = json::parse(line);
  } catch (const json::parse_error& e) {
    return error_json("bad_json", e.what(), counter).dump();
  }
  if (!req.is_object()) return error_json("bad_json", "request must be a JSON object", counter).dump();
  json seq = req.contains("seq") ? req["seq"] : json(counter);
  try {
    json r = dispatch(s, req);
    r["seq"] = seq;
    return r.dump();
  } catch (const ProtocolError& e) {
    return error_json(e.code, e.message, seq).dump();
  } catch (const ContractViolation& e) {
    return error_json("done_world", e.what(), seq).dump();
  } catch (const json::exception& e) {
    return error_json("bad_json", e.what(), seq).dump();
  }
}

Server::Server(ServerOptions options) : options_(std::move(options)) {}

Server::~Server() { stop(); }

void Server::start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::system_error(errno, std::generic_category(), "socket");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(options_.port);
  if (::inet_pton(AF_INET, options_.host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::system_error(EINVAL, std::generic_category(), "bad host " + options_.host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 || ::listen(listen_fd_, 64) < 0) {
    const int err = errno;
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::system_error(err, std::generic_category(), "bind " + options_.host + ":" + std::to_string(options_.port));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void Server::stop() {
  if (!running_.exchange(false)) return;
  if (acceptor_.joinable()) acceptor_.join();
  ::close(listen_fd_);
  listen_fd_ = -1;
  std::vector<Worker> workers;
  {
    std::lock_guard lock(mu_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& w : workers) w.thread.join();
}

void Server::reap_finished() {
  std::vector<Worker> done;
  {
    std::lock_guard lock(mu_);
    auto split = std::stable_partition(workers_.begin(), workers_.end(), [](const Worker& w) { return !*w.finished; });
    std::move(split, workers_.end(), std::back_inserter(done));
    workers_.erase(split, workers_.end());
  }
  for (auto& w : done) w.thread.join();
}

void Server::accept_loop() {
  while (running_) {
    pollfd p{listen_fd_, POLLIN, 0};
    reap_finished();
    if (::poll(&p, 1, 100) <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    if (active_.load() >= options_.max_sessions) {
      const std::string busy = error_json("busy", "session limit reached", nullptr).dump() + "\n";
      ::send(fd, busy.data(), busy.size(), MSG_NOSIGNAL);
      ::close(fd);
      continue;
    }
    ++active_;
    std::lock_guard lock(mu_);
    client_fds_.push_back(fd);
    const std::uint64_t id = next_id_++;
    auto finished = std::make_shared<std::atomic<bool>>(false);
    workers_.push_back({std::thread([this, fd, id, finished] {
                          serve_connection(fd, id);
                          *finished = true;
                        }),
                        finished});
  }
}

void Server::serve_connection(int fd, std::uint64_t id) {
  Session session;
  session.id = id;
  std::string buffer;
  bool oversized = false;
  char chunk[65536];
  const auto send_line = [fd](const std::string& line) {
    std::string out = line + "\n";
    std::size_t sent = 0;
    while (sent < out.size()) {
      const ssize_t n = ::send(fd, out.data() + sent, out.size() - sent, MSG_NOSIGNAL);
      if (n <= 0) return false;
      sent += static_cast<std::size_t>(n);
    }
    return true;
  };
  while (running_ && !session.closing) {
    pollfd p{fd, POLLIN, 0};
    const int ready = ::poll(&p, 1, options_.idle_timeout_ms);
    if (ready == 0) break;  // idle session reaped
    if (ready < 0 && errno == EINTR) continue;
    if (ready < 0) break;
    const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t start = 0;
    for (std::size_t nl; (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1) {
      std::string_view line(buffer.data() + start, nl - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (oversized) {
        oversized = false;  // tail of a rejected line
        continue;
      }
      if (line.empty()) continue;
      if (!send_line(handle_message(session, line)) || session.closing) break;
    }
    buffer.erase(0, start);
    if (buffer.size() > kMaxLineBytes) {
      if (!oversized) send_line(handle_message(session, std::string(kMaxLineBytes + 1, ' ')));
      oversized = true;
      buffer.clear();
    }
  }
  ::shutdown(fd, SHUT_RDWR);
  {
    std::lock_guard lock(mu_);
    std::erase(client_fds_, fd);
    ::close(fd);
  }
  --active_;
}

}  // namespace eden
