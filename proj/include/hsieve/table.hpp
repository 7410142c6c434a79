#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "hsieve/bits.hpp"
#include "hsieve/core.hpp"
#include "hsieve/errors.hpp"

namespace hsieve {

/// Per-number classification. Untouched numbers were neither crossed nor
/// decoded (evens under the odd-only variant; every survivor of the
/// odd-anchored Full family, whose survivors include powers of two).
enum class Verdict : std::uint8_t { Prime, Composite, Untouched };

struct ClassCounts {
  std::uint64_t prime = 0;
  std::uint64_t composite = 0;
  std::uint64_t untouched = 0;
};

/// How a table was produced: the classical reference sieve, or a harmonic
/// construction with the given parameters.
struct Provenance {
  enum class Kind : std::uint8_t { ClassicalOracle, Harmonic };

  Kind kind = Kind::ClassicalOracle;
  Variant variant = Variant::Full;
  SpawnRule rule = SpawnRule::SurvivorsOnly;
  bool odd_primes_only = false;

  static Provenance classical() { return Provenance{}; }

  static Provenance harmonic(Variant v, SpawnRule r, bool odd_primes_only) {
    return Provenance{Kind::Harmonic, v, r, odd_primes_only};
  }

  /// True when survivors decode as primes (2 plus odd survivors, or odd
  /// primes alone for the odd-only variant).
  bool decodes_primes() const {
    if (kind == Kind::ClassicalOracle) return true;
    return !odd_primes_only;
  }

  /// True when 2 itself is decoded (odd-only tables never classify evens).
  bool decodes_two() const {
    return kind == Kind::ClassicalOracle ||
           (variant == Variant::Full && !odd_primes_only);
  }

  std::string describe() const {
    if (kind == Kind::ClassicalOracle) return "classical";
    std::string out = "harmonic(";
    out += to_string(variant);
    out += ",";
    out += to_string(rule);
    if (odd_primes_only) out += ",odd_primes_only";
    out += ")";
    return out;
  }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Composite flags over [2, bound], one bit per odd number. Even numbers are
/// rule-derived except for odd-anchored Full tables, which carry an explicit
/// even-side bitset (their even crossings exclude the powers of two).
class ClassificationTable {
 public:
  ClassificationTable(std::uint64_t bound, Provenance provenance,
                      ParityBits odd_composite,
                      std::optional<ParityBits> even_composite = std::nullopt)
      : bound_(bound),
        provenance_(provenance),
        odd_(std::move(odd_composite)),
        even_(std::move(even_composite)) {
    if (bound < 2) throw ConfigError("table bound must be >= 2");
  }

  std::uint64_t bound() const { return bound_; }
  const Provenance& provenance() const { return provenance_; }

  /// True iff some term of the generating construction zero-crosses n
  /// (harmonic) or n has a nontrivial divisor (classical).
  bool crossed(std::uint64_t n) const {
    check_range(n);
    if (n % 2 == 1) return odd_.test(n);
    if (n == 2) return false;
    if (even_) return even_->test(n);
    if (provenance_.kind == Provenance::Kind::Harmonic &&
        provenance_.variant == Variant::OddOnly)
      return false;  // evens are out of scope, never crossed
    return true;  // divisor 2, or the anchor-2 term
  }

  Verdict verdict(std::uint64_t n) const {
    if (crossed(n)) return Verdict::Composite;
    if (even_) return Verdict::Untouched;  // odd-anchored family: no decoding
    if (provenance_.kind == Provenance::Kind::Harmonic &&
        provenance_.variant == Variant::OddOnly && n % 2 == 0)
      return Verdict::Untouched;
    return Verdict::Prime;
  }

  /// True when survivors decode as primes (the even-bit families never do:
  /// their survivors include the powers of two).
  bool decodes_primes() const {
    return provenance_.decodes_primes() && !even_;
  }

  /// Number of primes <= x. Requires a prime-decoding provenance; odd-only
  /// tables count odd primes (2 is never decoded there).
  std::uint64_t prime_count(std::uint64_t x) const {
    check_range(x);
    require_prime_decoding();
    std::uint64_t count = provenance_.decodes_two() && x >= 2 ? 1 : 0;
    if (x >= 3) {
      const std::uint64_t odds = (x - 3) / 2 + 1;
      count += odds - odd_.popcount_le(x);
    }
    return count;
  }

  /// Ascending stream of decoded primes; no list is materialized.
  class PrimeIterator {
   public:
    using value_type = std::uint64_t;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;
    using pointer = const std::uint64_t*;
    using reference = std::uint64_t;

    PrimeIterator() = default;
    PrimeIterator(const ClassificationTable* table, std::uint64_t n)
        : table_(table), n_(n) {}

    std::uint64_t operator*() const { return n_; }

    PrimeIterator& operator++() {
      n_ = table_->next_prime_after(n_);
      return *this;
    }

    PrimeIterator operator++(int) {
      PrimeIterator tmp = *this;
      ++*this;
      return tmp;
    }

    friend bool operator==(const PrimeIterator& a, const PrimeIterator& b) {
      return a.n_ == b.n_;
    }

   private:
    const ClassificationTable* table_ = nullptr;
    std::uint64_t n_ = 0;  // 0 = end
  };

  class PrimeRange {
   public:
    explicit PrimeRange(const ClassificationTable* table) : table_(table) {}
    PrimeIterator begin() const {
      return PrimeIterator(table_, table_->first_prime());
    }
    PrimeIterator end() const { return PrimeIterator(table_, 0); }

   private:
    const ClassificationTable* table_;
  };

  PrimeRange primes() const {
    require_prime_decoding();
    return PrimeRange(this);
  }

  /// Verdict totals over [2, bound], via word popcounts.
  ClassCounts class_counts() const {
    const std::uint64_t odd_total = odd_.count();
    const std::uint64_t odd_composite = odd_.popcount_le(bound_);
    const std::uint64_t even_total = bound_ / 2;  // evens in [2, bound]
    ClassCounts counts;
    if (provenance_.kind == Provenance::Kind::Harmonic &&
        provenance_.variant == Variant::OddOnly) {
      counts.composite = odd_composite;
      counts.prime = odd_total - odd_composite;
      counts.untouched = even_total;
    } else if (even_) {
      counts.composite = odd_composite + even_->popcount_le(bound_);
      counts.prime = 0;
      counts.untouched = (bound_ - 1) - counts.composite;
    } else {
      counts.composite = odd_composite + (even_total - 1);
      counts.prime = 1 + (odd_total - odd_composite);
      counts.untouched = 0;
    }
    return counts;
  }

  /// Largest decoded prime, or 0 when there is none.
  std::uint64_t max_prime() const {
    require_prime_decoding();
    for (std::uint64_t n = bound_ % 2 == 0 ? bound_ - 1 : bound_; n >= 3;
         n -= 2)
      if (!odd_.test(n)) return n;
    return provenance_.decodes_two() ? 2 : 0;
  }

  const ParityBits& odd_bits() const { return odd_; }
  const std::optional<ParityBits>& even_bits() const { return even_; }

 private:
  friend class PrimeIterator;

  void check_range(std::uint64_t n) const {
    if (n < 2 || n > bound_)
      throw std::out_of_range("classification query outside [2, bound]");
  }

  void require_prime_decoding() const {
    if (!decodes_primes())
      throw ConfigError("survivors of " + provenance_.describe() +
                        " are not decoded as primes");
  }

  std::uint64_t first_prime() const {
    if (provenance_.decodes_two()) return 2;
    return next_prime_after(2);
  }

  std::uint64_t next_prime_after(std::uint64_t n) const {
    for (std::uint64_t c = n < 3 ? 3 : n + 2; c <= bound_; c += 2)
      if (!odd_.test(c)) return c;
    return 0;
  }

  std::uint64_t bound_;
  Provenance provenance_;
  ParityBits odd_;
  std::optional<ParityBits> even_;
};

}  // namespace hsieve
