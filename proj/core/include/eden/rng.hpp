#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace eden {

// xoshiro256** seeded through splitmix64. Every draw is defined in terms of
// raw 64-bit outputs so streams are portable across compilers and languages.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "xoshiro256**/splitmix64";

  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  // Uniform in [0, bound) via Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);

  // Uniform integer in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);

  // 53-bit uniform in [0, 1).
  double uniform();

  // Standard normal by Box-Muller over two uniform() draws (no caching).
  double normal();

  bool operator==(const Rng&) const = default;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_;
};

std::uint64_t splitmix64(std::uint64_t& state);

// Stateless 64-bit mix of several values; used where a pure function of
// state needs a pseudo-random pick (weather, exploratory moves).
std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0,
                       std::uint64_t d = 0);

}  // namespace eden
