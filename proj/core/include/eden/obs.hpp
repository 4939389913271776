#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eden/engine.hpp"

namespace eden {

enum class ObsPreset { raw, baseline, pigs10, all10, native };

std::string_view to_string(ObsPreset p);
std::optional<ObsPreset> parse_obs_preset(std::string_view name);

inline constexpr int kCreatureFields = 7;
inline constexpr int kMaterialFields = 3;
inline constexpr int kCellFields = 4;

struct Block {
  int offset = 0;
  int length = 0;

  bool operator==(const Block&) const = default;
};

// Shape of the raw vector for one config, plus the ids wrap() needs.
struct RawLayout {
  int n_buffs = 0;
  int max_creatures = 0;
  int max_materials = 0;
  int grid_radius = 0;  // largest vision radius; the Block7 grid is (2r+1)²
  std::array<Block, 7> blocks{};
  int dim = 0;

  // 1-based type ids, 0 when the config lacks them.
  int pig = 0, tree = 0, river = 0;
  int meat = 0, water = 0, wood = 0, torch = 0;

  bool operator==(const RawLayout&) const = default;
};

RawLayout raw_layout(const WorldConfig& cfg);

struct RawObservation {
  RawLayout layout;
  std::vector<double> values;
  Position agent;
  bool night = false;

  std::span<const double> block(int index) const {
    const auto& b = layout.blocks[static_cast<std::size_t>(index)];
    return std::span<const double>(values).subspan(static_cast<std::size_t>(b.offset),
                                                   static_cast<std::size_t>(b.length));
  }

  bool operator==(const RawObservation&) const = default;
};

struct WrappedObservation {
  ObsPreset preset = ObsPreset::baseline;
  std::vector<double> values;

  bool operator==(const WrappedObservation&) const = default;
};

RawObservation assemble_raw(const World& world);

// Projects a survival raw observation onto baseline, pigs10 or all10.
WrappedObservation wrap(const RawObservation& raw, ObsPreset preset);

// Vector length without building a world. Throws std::invalid_argument when
// the preset does not apply to the config's world kind.
int dimension(const WorldConfig& cfg, ObsPreset preset);

struct LayoutField {
  int offset = 0;
  std::string name;
};

std::vector<LayoutField> layout_table(const WorldConfig& cfg, ObsPreset preset);

}  // namespace eden
