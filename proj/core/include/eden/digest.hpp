#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace eden {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = kFnvOffset);

// FNV-1a over the IEEE-754 little-endian encoding of each value.
std::uint64_t digest_values(std::span<const double> values);

std::string to_hex(std::uint64_t value);
std::uint64_t from_hex(std::string_view text);

}  // namespace eden
