#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "eden/env.hpp"

namespace eden {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::size_t kMaxLineBytes = 1 << 20;
inline constexpr std::uint16_t kDefaultPort = 7777;

struct Session {
  std::uint64_t id = 0;
  std::unique_ptr<Environment> env;
  std::string config_name;
  std::uint64_t seq = 0;  // counter used when a request carries no seq
  bool closing = false;
};

// Executes one protocol op and returns the response line (no newline).
std::string handle_message(Session& session, std::string_view line);

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = kDefaultPort;  // 0 picks a free port
  int max_sessions = 64;
  int idle_timeout_ms = 300'000;
};

class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts accepting; throws std::system_error on bind failure.
  void start();
  std::uint16_t port() const { return port_; }
  void stop();

  int active_sessions() const { return active_.load(); }

 private:
  struct Worker {
    std::thread thread;
    std::shared_ptr<std::atomic<bool>> finished;
  };

  void accept_loop();
  void reap_finished();
  void serve_connection(int fd, std::uint64_t id);

  ServerOptions options_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{false};
  std::atomic<int> active_{0};
  std::atomic<std::uint64_t> next_id_{1};
  std::thread acceptor_;
  std::mutex mu_;
  std::vector<Worker> workers_;
  std::vector<int> client_fds_;
};

}  // namespace eden
