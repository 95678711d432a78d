#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace fhnvem {

// Shortest decimal string that round-trips to the same double. Used by every
// writer so that serialized artifacts are deterministic.
inline std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// General-format decimal string with the given number of significant digits.
inline std::string format_double(double v, int significant) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fhnvem
