#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsieve/errors.hpp"

namespace hsieve {

/// How a term crosses the number line. A Full term crosses every multiple of
/// its anchor after the anchor itself; an OddOnly term has twice the period
/// and crosses only the odd multiples.
enum class Variant : std::uint8_t { Full, OddOnly };

/// Where terms appear when a construction is spawned over [2, bound].
/// SurvivorsOnly places a term only at numbers no earlier term crosses;
/// Everywhere places a term at every eligible number regardless.
enum class SpawnRule : std::uint8_t { SurvivorsOnly, Everywhere };

inline std::string_view to_string(Variant v) {
  return v == Variant::Full ? "full" : "odd_only";
}

inline std::string_view to_string(SpawnRule r) {
  return r == SpawnRule::SurvivorsOnly ? "survivors_only" : "everywhere";
}

/// One periodic marker on the number line: sits at its anchor, crosses
/// multiples of the anchor strictly after the anchor itself.
struct SieveTerm {
  std::uint64_t anchor = 2;
  Variant variant = Variant::Full;

  friend bool operator==(const SieveTerm&, const SieveTerm&) = default;
};

inline SieveTerm make_term(std::uint64_t anchor, Variant variant) {
  if (anchor < 2) throw ConfigError("term anchor must be >= 2");
  if (variant == Variant::OddOnly && (anchor % 2 == 0 || anchor < 3))
    throw ConfigError("odd-only term anchor must be an odd number >= 3");
  return SieveTerm{anchor, variant};
}

/// Period length in number-line units: the anchor for Full terms, twice the
/// anchor for OddOnly terms.
inline std::uint64_t period_units(const SieveTerm& t) {
  return t.variant == Variant::Full ? t.anchor : 2 * t.anchor;
}

/// Exact zero-cross test, integer arithmetic only. A term never crosses its
/// own anchor: Full terms cross multiples with quotient >= 2, OddOnly terms
/// cross multiples with odd quotient >= 3.
inline bool zero_cross(const SieveTerm& t, std::uint64_t n) {
  if (n % t.anchor != 0) return false;
  const std::uint64_t q = n / t.anchor;
  if (t.variant == Variant::Full) return q >= 2;
  return q >= 3 && q % 2 == 1;
}

/// An ordered set of same-variant terms over [2, bound] together with the
/// rule that produced it. odd_primes_only (Full variant only) drops the
/// anchor-2 term after spawning, leaving the odd-anchored family.
class SieveConstruction {
 public:
  /// Spawns terms in ascending anchor order under the given rule.
  /// SurvivorsOnly has a loop-carried dependence (a number crossed by an
  /// earlier term never receives a term) and is inherently sequential.
  static SieveConstruction spawn(Variant variant, SpawnRule rule,
                                 std::uint64_t bound,
                                 bool odd_primes_only = false) {
    validate_config(variant, bound, odd_primes_only);
    std::vector<std::uint64_t> anchors;
    if (variant == Variant::Full) {
      if (rule == SpawnRule::Everywhere) {
        anchors.reserve(bound - 1);
        for (std::uint64_t a = 2; a <= bound; ++a) anchors.push_back(a);
      } else {
        std::vector<bool> crossed(bound + 1, false);
        for (std::uint64_t a = 2; a <= bound; ++a) {
          if (crossed[a]) continue;
          anchors.push_back(a);
          for (std::uint64_t m = 2 * a; m <= bound; m += a) crossed[m] = true;
        }
      }
    } else {
      if (rule == SpawnRule::Everywhere) {
        for (std::uint64_t a = 3; a <= bound; a += 2) anchors.push_back(a);
      } else {
        std::vector<bool> crossed(bound + 1, false);
        for (std::uint64_t a = 3; a <= bound; a += 2) {
          if (crossed[a]) continue;
          anchors.push_back(a);
          for (std::uint64_t m = 3 * a; m <= bound; m += 2 * a)
            crossed[m] = true;
        }
      }
    }
    if (odd_primes_only && !anchors.empty() && anchors.front() == 2)
      anchors.erase(anchors.begin());
    return SieveConstruction(variant, rule, bound, odd_primes_only,
                             std::move(anchors));
  }

  /// Builds a construction from an explicit anchor list (figure prefixes,
  /// custom experiments). Anchors must be strictly ascending and valid for
  /// the variant; no spawn-rule relationship is implied or checked.
  static SieveConstruction from_anchors(Variant variant, SpawnRule rule,
                                        std::uint64_t bound,
                                        bool odd_primes_only,
                                        std::vector<std::uint64_t> anchors) {
    validate_config(variant, bound, odd_primes_only);
    std::uint64_t prev = 0;
    for (std::uint64_t a : anchors) {
      make_term(a, variant);  // validates anchor/variant compatibility
      if (a <= prev) throw ConfigError("anchors must be strictly ascending");
      if (a > bound) throw ConfigError("anchor exceeds bound");
      if (odd_primes_only && a == 2)
        throw ConfigError("odd_primes_only excludes the anchor-2 term");
      prev = a;
    }
    return SieveConstruction(variant, rule, bound, odd_primes_only,
                             std::move(anchors));
  }

  Variant variant() const { return variant_; }
  SpawnRule rule() const { return rule_; }
  std::uint64_t bound() const { return bound_; }
  bool odd_primes_only() const { return odd_primes_only_; }

  const std::vector<std::uint64_t>& anchors() const { return anchors_; }
  std::size_t term_count() const { return anchors_.size(); }

  SieveTerm term_at(std::size_t i) const {
    return SieveTerm{anchors_.at(i), variant_};
  }

  bool has_anchor(std::uint64_t a) const {
    return std::binary_search(anchors_.begin(), anchors_.end(), a);
  }

  /// Ascending anchors whose terms zero-cross n; empty means n survives.
  std::vector<std::uint64_t> crossers_of(std::uint64_t n) const {
    if (n < 2 || n > bound_)
      throw std::out_of_range("crossers_of: n outside [2, bound]");
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      divisors.push_back(d);
      if (d != n / d) divisors.push_back(n / d);
    }
    std::sort(divisors.begin(), divisors.end());
    std::vector<std::uint64_t> crossers;
    for (std::uint64_t d : divisors) {
      if (d < 2 || !has_anchor(d)) continue;
      if (zero_cross(SieveTerm{d, variant_}, n)) crossers.push_back(d);
    }
    return crossers;
  }

 private:
  SieveConstruction(Variant variant, SpawnRule rule, std::uint64_t bound,
                    bool odd_primes_only, std::vector<std::uint64_t> anchors)
      : variant_(variant),
        rule_(rule),
        bound_(bound),
        odd_primes_only_(odd_primes_only),
        anchors_(std::move(anchors)) {}

  static void validate_config(Variant variant, std::uint64_t bound,
                              bool odd_primes_only) {
    if (bound < 2) throw ConfigError("construction bound must be >= 2");
    if (odd_primes_only && variant == Variant::OddOnly)
      throw ConfigError(
          "odd_primes_only is redundant with the odd-only variant");
  }

  Variant variant_;
  SpawnRule rule_;
  std::uint64_t bound_;
  bool odd_primes_only_;
  std::vector<std::uint64_t> anchors_;
};

/// Free-function spelling of SieveConstruction::spawn.
inline SieveConstruction spawn_construction(Variant variant, SpawnRule rule,
                                            std::uint64_t bound,
                                            bool odd_primes_only = false) {
  return SieveConstruction::spawn(variant, rule, bound, odd_primes_only);
}

}  // namespace hsieve
