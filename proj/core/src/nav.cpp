#include "eden/nav.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eden {

namespace {

constexpr std::uint64_t kGoalStream = 0x676f616c2d616e63ULL;  // "goal-anc"

}  // namespace

int clip_offset(double v, int max_offset) {
  if (std::isnan(v)) return 0;
  const double t = std::trunc(std::clamp(v, -static_cast<double>(max_offset), static_cast<double>(max_offset)));
  return static_cast<int>(t);
}

double goal_dist2(const NavState& s) {
  const double dx = s.x - s.goal.x;
  const double dy = s.y - s.goal.y;
  return dx * dx + dy * dy;
}

NavReset nav_reset(const WorldConfig& cfg, std::uint64_t seed) {
  if (cfg.kind != WorldKind::navigation) throw ContractViolation("nav_reset requires a navigation config");
  const World world = new_world(cfg, seed);
  const int river = cfg.creature_index("river");

  Rng rng(hash_mix(seed, kGoalStream));
  const Position anchor{static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.map_width))),
                        static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.map_height)))};
  const Entity* best = nullptr;
  int best_d = std::numeric_limits<int>::max();
  for (const auto& e : world.state().entities) {
    if (e.kind != river) continue;
    const int d = dist2(e.pos, anchor);
    if (d < best_d) {  // entities are id-ordered, so ties keep the smaller id
      best_d = d;
      best = &e;
    }
  }
  if (!best) throw GenerationError("navigation map has no river spot");

  NavReset out;
  auto& s = out.state;
  s.x = world.state().agent.pos.x;
  s.y = world.state().agent.pos.y;
  s.goal = best->pos;
  s.seed = seed;
  s.horizon = cfg.navigation.horizon;
  s.tolerance = cfg.navigation.goal_tolerance;
  s.max_offset = cfg.navigation.max_offset;
  s.width = cfg.map_width;
  s.height = cfg.map_height;
  out.obs = {s.x, s.y};
  return out;
}

NavStep nav_step(NavState& s, double ox, double oy) {
  if (s.done) throw ContractViolation("nav_step called on a finished episode");
  NavStep out;
  out.applied = {clip_offset(ox, s.max_offset), clip_offset(oy, s.max_offset)};
  const double before = goal_dist2(s);
  s.x = std::clamp(s.x + out.applied[0], 0.0, s.width);
  s.y = std::clamp(s.y + out.applied[1], 0.0, s.height);
  const double after = goal_dist2(s);
  out.reward = before - after;
  ++s.t;
  s.done = std::sqrt(after) < s.tolerance || s.t >= s.horizon;
  out.done = s.done;
  out.obs = {s.x, s.y};
  return out;
}

}  // namespace eden
