#include "eden/digest.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <stdexcept>

namespace eden {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t digest_values(std::span<const double> values) {
  std::uint64_t h = kFnvOffset;
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= kFnvPrime;
    }
  }
  return h;
}

std::string to_hex(std::uint64_t value) {
  char buf[19] = {'0', 'x'};
  char* end = std::to_chars(buf + 2, buf + sizeof(buf), value, 16).ptr;
  // zero-pad to 16 digits so digests compare as fixed-width strings
  const auto digits = static_cast<std::size_t>(end - (buf + 2));
  std::string out = "0x";
  out.append(16 - digits, '0');
  out.append(buf + 2, digits);
  return out;
}

std::uint64_t from_hex(std::string_view text) {
  if (text.starts_with("0x")) text.remove_prefix(2);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad hex digest: " + std::string(text));
  }
  return value;
}

}  // namespace eden
