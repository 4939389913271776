#pragma once

#include <array>
#include <cstdint>

#include "eden/config.hpp"
#include "eden/engine.hpp"

namespace eden {

struct NavState {
  double x = 0;
  double y = 0;
  Position goal;
  int t = 0;
  bool done = false;
  std::uint64_t seed = 0;
  int horizon = 20;
  double tolerance = 0.1;
  int max_offset = 2;
  double width = 40;
  double height = 40;

  bool operator==(const NavState&) const = default;
};

using NavObservation = std::array<double, 2>;

struct NavReset {
  NavState state;
  NavObservation obs{};
};

struct NavStep {
  NavObservation obs{};
  double reward = 0;
  bool done = false;
  std::array<int, 2> applied{};
};

NavReset nav_reset(const WorldConfig& cfg, std::uint64_t seed);

// Rounds toward zero, clips each axis to [-max_offset, max_offset], moves and
// clamps to the map. Reward is the decrease in squared goal distance.
NavStep nav_step(NavState& state, double ox, double oy);

int clip_offset(double v, int max_offset);

double goal_dist2(const NavState& s);

}  // namespace eden
