#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "hsieve/errors.hpp"

namespace hsieve {

/// FNV-1a over a byte string; used for config fingerprints.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string to_hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

/// Locale-independent fixed-point formatting (std::to_chars).
inline std::string fmt_fixed(double v, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

/// Parses "1024", "64K", "16M", "2G" into bytes.
inline std::uint64_t parse_byte_size(std::string_view s) {
  if (s.empty()) throw ConfigError("empty byte-size value");
  std::uint64_t multiplier = 1;
  char last = s.back();
  if (last == 'K' || last == 'k') multiplier = 1024ull;
  if (last == 'M' || last == 'm') multiplier = 1024ull * 1024;
  if (last == 'G' || last == 'g') multiplier = 1024ull * 1024 * 1024;
  if (multiplier != 1) s.remove_suffix(1);
  std::uint64_t value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError("bad byte-size value: " + std::string(s));
  return value * multiplier;
}

inline std::uint64_t isqrt64(std::uint64_t n) {
  if (n < 2) return n;
  std::uint64_t r = static_cast<std::uint64_t>(__builtin_sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace hsieve
