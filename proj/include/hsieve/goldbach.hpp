#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hsieve/errors.hpp"
#include "hsieve/table.hpp"

namespace hsieve {

inline constexpr std::uint64_t kRepresentationGuard = 1'000'000;

/// Odd-prime lookup against a table's odd-index bits. Valid for the
/// classical oracle and every spawned construction: their odd survivors are
/// exactly the odd primes.
inline bool is_odd_prime(const ClassificationTable& table, std::uint64_t n) {
  return n >= 3 && n % 2 == 1 && n <= table.bound() &&
         !table.odd_bits().test(n);
}

/// An odd n > 7 written as p1 + p2 + p3 over odd primes, p1 <= p2 <= p3.
struct GoldbachTriple {
  std::uint64_t n;
  std::uint64_t p1;
  std::uint64_t p2;
  std::uint64_t p3;

  friend bool operator==(const GoldbachTriple&, const GoldbachTriple&) = default;

  /// Re-asserts every type invariant against the table; a violation is an
  /// internal error, not an input error.
  void validate(const ClassificationTable& table) const {
    if (n % 2 == 0 || n <= 7)
      throw std::logic_error("triple target must be odd and > 7");
    if (p1 > p2 || p2 > p3) throw std::logic_error("triple is not ordered");
    if (p1 + p2 + p3 != n) throw std::logic_error("triple does not sum to n");
    for (std::uint64_t p : {p1, p2, p3})
      if (!is_odd_prime(table, p))
        throw std::logic_error("triple element is not an odd prime");
  }
};

/// Minimal odd prime p2 with m - p2 prime, for even m >= 6. Returns nothing
/// only when no pair exists, which would contradict the strong Goldbach
/// property within the table's bound.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>>
decompose_strong_pair(std::uint64_t m, const ClassificationTable& table) {
  if (m % 2 != 0 || m < 6)
    throw ConfigError("strong pair target must be even and >= 6");
  if (m > table.bound())
    throw ConfigError("strong pair target exceeds table bound");
  // If any pair exists, one with p2 <= m/2 exists by symmetry.
  for (std::uint64_t p2 = 3; p2 <= m / 2; p2 += 2)
    if (is_odd_prime(table, p2) && is_odd_prime(table, m - p2))
      return std::make_pair(p2, m - p2);
  return std::nullopt;
}

/// Lexicographically smallest triple: smallest p1, then smallest p2. The
/// first p1 admitting a strong pair automatically yields p2 >= p1 (an
/// earlier p1 would have succeeded otherwise), so the result is ordered.
inline GoldbachTriple decompose_weak(std::uint64_t n,
                                     const ClassificationTable& table) {
  if (n % 2 == 0 || n <= 7)
    throw ConfigError("weak decomposition target must be odd and > 7");
  if (n > table.bound())
    throw ConfigError("weak decomposition target exceeds table bound");
  for (std::uint64_t p1 = 3; p1 + 6 <= n; p1 += 2) {
    if (!is_odd_prime(table, p1)) continue;
    if (auto pair = decompose_strong_pair(n - p1, table)) {
      GoldbachTriple triple{n, p1, pair->first, pair->second};
      triple.validate(table);
      return triple;
    }
  }
  throw NoTripleFound(n);
}

/// Number of multisets {p1 <= p2 <= p3} of odd primes summing to n.
/// Diagnostic brute force, guarded at 10^6.
inline std::uint64_t count_representations(
    std::uint64_t n, const ClassificationTable& table,
    std::span<const std::uint64_t> odd_primes) {
  if (n % 2 == 0 || n < 9)
    throw ConfigError("representation count target must be odd and >= 9");
  if (n > kRepresentationGuard)
    throw ConfigError("representation count target exceeds the 10^6 "
                      "complexity guard");
  if (n > table.bound())
    throw ConfigError("representation count target exceeds table bound");
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < odd_primes.size(); ++i) {
    const std::uint64_t p1 = odd_primes[i];
    if (3 * p1 > n) break;
    for (std::size_t j = i; j < odd_primes.size(); ++j) {
      const std::uint64_t p2 = odd_primes[j];
      if (p1 + 2 * p2 > n) break;
      if (is_odd_prime(table, n - p1 - p2)) ++count;
    }
  }
  return count;
}

inline std::vector<std::uint64_t> odd_primes_list(
    const ClassificationTable& table, std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 3; p <= limit && p <= table.bound(); p += 2)
    if (!table.odd_bits().test(p)) primes.push_back(p);
  return primes;
}

inline std::uint64_t count_representations(std::uint64_t n,
                                           const ClassificationTable& table) {
  const auto primes = odd_primes_list(table, n);
  return count_representations(n, table, primes);
}

/// Seeded sampling check that the sum of three odd numbers > 1 is an odd
/// number > 7. Returns true iff every sample passes.
inline bool three_odds_sum_property(std::uint64_t sample_count,
                                    std::uint64_t rng_seed) {
  if (sample_count < 1) throw ConfigError("sample count must be >= 1");
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::uint64_t> half(0, 500'000);
  for (std::uint64_t i = 0; i < sample_count; ++i) {
    const std::uint64_t a = 3 + 2 * half(rng);
    const std::uint64_t b = 3 + 2 * half(rng);
    const std::uint64_t c = 3 + 2 * half(rng);
    const std::uint64_t sum = a + b + c;
    if (sum % 2 != 1 || sum <= 7) return false;
  }
  return true;
}

}  // namespace hsieve
