#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "hsieve/bits.hpp"
#include "hsieve/core.hpp"
#include "hsieve/errors.hpp"
#include "hsieve/table.hpp"
#include "hsieve/util.hpp"

namespace hsieve {

inline constexpr std::uint64_t kDefaultSegmentLength = 1ull << 20;
inline constexpr std::uint64_t kDefaultMemoryBudget = 2ull << 30;  // 2 GiB

/// Segmentation of a classical sieve run. Base primes cover every divisor
/// up to sqrt(bound); segments are cache-resident windows of the table.
struct SegmentPlan {
  std::uint64_t segment_length = kDefaultSegmentLength;  // numbers per segment
  std::uint64_t base_primes_bound = 2;                   // ceil(sqrt(bound))
};

inline SegmentPlan make_segment_plan(
    std::uint64_t bound, std::uint64_t segment_length = kDefaultSegmentLength) {
  if (segment_length < 64 || (segment_length & (segment_length - 1)) != 0)
    throw ConfigError("segment length must be a power of two >= 64");
  const std::uint64_t root = isqrt64(bound);
  return SegmentPlan{segment_length,
                     root * root == bound ? root : root + 1};
}

struct EngineOptions {
  std::uint64_t segment_length = kDefaultSegmentLength;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
  unsigned workers = 1;  // 0 = hardware concurrency
};

namespace detail {

inline void require_within_budget(std::uint64_t bytes, std::uint64_t budget) {
  if (bytes > budget) throw CapacityError(bytes, budget);
}

/// Bytes of one parity bitset covering {first, first+2, ..., <= limit}.
inline std::uint64_t parity_bits_bytes(std::uint64_t first,
                                       std::uint64_t limit) {
  const std::uint64_t count = limit >= first ? (limit - first) / 2 + 1 : 0;
  return (count + 63) / 64 * 8;
}

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Odd primes <= limit by a plain byte sieve (base primes are tiny).
inline std::vector<std::uint64_t> odd_base_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 3) return primes;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (std::uint64_t p = 3; p <= limit; p += 2) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[m] = 1;
  }
  return primes;
}

/// Marks odd composites in [lo, hi] (odd bounds) against the base primes.
inline void sieve_odd_window(ParityBits& odd,
                             const std::vector<std::uint64_t>& base_primes,
                             std::uint64_t lo, std::uint64_t hi,
                             std::uint64_t segment_length) {
  for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += segment_length) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + segment_length - 1);
    for (std::uint64_t p : base_primes) {
      std::uint64_t start = p * p;
      if (start > seg_hi) break;
      if (start < seg_lo) {
        std::uint64_t q = (seg_lo + p - 1) / p;
        if (q % 2 == 0) ++q;  // odd multiples only
        start = std::max(p * q, p * p);
      }
      for (std::uint64_t m = start; m <= seg_hi; m += 2 * p) odd.set(m);
    }
  }
}

}  // namespace detail

/// Classical segmented sieve over [2, bound]; the reference oracle.
/// Workers sieve disjoint word-aligned windows of the shared table, so the
/// output is bit-identical for any worker count and segment length.
inline ClassificationTable classical_sieve(std::uint64_t bound,
                                           const EngineOptions& options = {}) {
  if (bound < 2) throw ConfigError("sieve bound must be >= 2");
  const SegmentPlan plan = make_segment_plan(bound, options.segment_length);
  detail::require_within_budget(
      detail::parity_bits_bytes(3, bound) + plan.base_primes_bound,
      options.memory_budget);
  ParityBits odd(3, bound);
  const auto base_primes = detail::odd_base_primes(plan.base_primes_bound);

  const std::uint64_t total_words = odd.words().size();
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(detail::resolve_workers(options.workers),
                              std::max<std::uint64_t>(total_words / 8, 1)));
  if (workers <= 1 || total_words == 0) {
    if (bound >= 9)
      detail::sieve_odd_window(odd, base_primes, 3, bound,
                               plan.segment_length);
  } else {
    // 64 odd slots per word -> windows at 128-number granularity, so no two
    // workers ever touch the same word.
    const std::uint64_t words_per = (total_words + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t w_lo = w * words_per;
      const std::uint64_t w_hi = std::min(total_words, w_lo + words_per);
      if (w_lo >= w_hi) break;
      const std::uint64_t n_lo = 3 + 128 * w_lo;
      const std::uint64_t n_hi = std::min(bound, 3 + 128 * w_hi - 2);
      pool.emplace_back([&, n_lo, n_hi] {
        detail::sieve_odd_window(odd, base_primes, n_lo, n_hi,
                                 plan.segment_length);
      });
    }
    for (auto& t : pool) t.join();
  }
  return ClassificationTable(bound, Provenance::classical(), std::move(odd));
}

/// Materializes a construction by striding each term through its multiples,
/// which keeps the cost in the classical sieve's complexity class instead of
/// evaluating every term at every point. Even-side bits are stored only when
/// the anchor-2 term is absent; otherwise the even classification is exact
/// by rule (all evens > 2 crossed for Full, none for OddOnly).
inline ClassificationTable materialize(const SieveConstruction& construction,
                                       const EngineOptions& options = {}) {
  const std::uint64_t bound = construction.bound();
  const bool track_evens = construction.variant() == Variant::Full &&
                           !construction.has_anchor(2);
  std::uint64_t bytes = detail::parity_bits_bytes(3, bound);
  if (track_evens) bytes += detail::parity_bits_bytes(4, bound);
  detail::require_within_budget(bytes, options.memory_budget);
  ParityBits odd(3, bound);
  std::optional<ParityBits> even;
  if (track_evens) even.emplace(4, bound);

  for (std::uint64_t a : construction.anchors()) {
    if (construction.variant() == Variant::OddOnly) {
      for (std::uint64_t m = 3 * a; m <= bound; m += 2 * a) odd.set(m);
      continue;
    }
    if (a % 2 == 1) {
      for (std::uint64_t m = 3 * a; m <= bound; m += 2 * a) odd.set(m);
      if (even)
        for (std::uint64_t m = 2 * a; m <= bound; m += 2 * a) even->set(m);
    } else if (even) {
      for (std::uint64_t m = 2 * a; m <= bound; m += a) even->set(m);
    }
  }
  return ClassificationTable(
      bound,
      Provenance::harmonic(construction.variant(), construction.rule(),
                           construction.odd_primes_only()),
      std::move(odd), std::move(even));
}

}  // namespace hsieve
