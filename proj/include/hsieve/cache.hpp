#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "hsieve/bits.hpp"
#include "hsieve/errors.hpp"
#include "hsieve/table.hpp"

namespace hsieve {

// Prime-cache file layout (bit-exact):
//   "HSV1"                      4-byte magic
//   version                     1 byte, currently 1
//   bound                       64-bit little-endian
//   words                       64-bit little-endian each; one bit per odd
//                               number (bit i = 2*i + 3), 1 = composite
inline constexpr std::array<char, 4> kCacheMagic{'H', 'S', 'V', '1'};
inline constexpr std::uint8_t kCacheVersion = 1;

namespace detail {

inline void put_u64_le(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

inline bool get_u64_le(std::istream& in, std::uint64_t& v) {
  char buf[8];
  if (!in.read(buf, 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i]))
         << (8 * i);
  return true;
}

}  // namespace detail

/// Writes the odd-index composite bits of a table. All spawned constructions
/// and the classical oracle agree on these bits for a given bound, so caches
/// are byte-identical across oracles.
inline void write_prime_cache(const std::filesystem::path& path,
                              const ClassificationTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open cache file for writing: " +
                              path.string());
  out.write(kCacheMagic.data(), kCacheMagic.size());
  out.put(static_cast<char>(kCacheVersion));
  detail::put_u64_le(out, table.bound());
  for (std::uint64_t word : table.odd_bits().words())
    detail::put_u64_le(out, word);
  out.flush();
  if (!out) throw ConfigError("failed writing cache file: " + path.string());
}

/// Reads a cache back as a prime table. Malformed or truncated files are
/// rejected; there is no silent re-sieve.
inline ClassificationTable read_prime_cache(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open cache file: " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kCacheMagic)
    throw ConfigError("not a prime cache (bad magic): " + path.string());
  const int version = in.get();
  if (version != kCacheVersion)
    throw ConfigError("unsupported cache version " + std::to_string(version) +
                      ": " + path.string());
  std::uint64_t bound = 0;
  if (!detail::get_u64_le(in, bound) || bound < 2)
    throw ConfigError("corrupt cache header: " + path.string());
  const std::uint64_t odd_count = bound >= 3 ? (bound - 3) / 2 + 1 : 0;
  std::vector<std::uint64_t> words((odd_count + 63) / 64);
  for (auto& word : words)
    if (!detail::get_u64_le(in, word))
      throw ConfigError("truncated cache file: " + path.string());
  if (in.get() != std::char_traits<char>::eof())
    throw ConfigError("trailing bytes in cache file: " + path.string());
  return ClassificationTable(bound, Provenance::classical(),
                             ParityBits(3, bound, std::move(words)));
}

}  // namespace hsieve
