#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hsieve/core.hpp"
#include "hsieve/errors.hpp"
#include "hsieve/sieve.hpp"
#include "hsieve/table.hpp"

namespace hsieve {

enum class AnchorRelation : std::uint8_t {
  Equal,
  LeftSubsetOfRight,
  Incomparable
};

inline std::string_view to_string(AnchorRelation r) {
  switch (r) {
    case AnchorRelation::Equal: return "equal";
    case AnchorRelation::LeftSubsetOfRight: return "left_subset_of_right";
    default: return "incomparable";
  }
}

struct ConstructionDescriptor {
  Variant variant;
  SpawnRule rule;
  bool odd_primes_only;
  std::uint64_t bound;
  std::uint64_t anchor_count;
};

/// Outcome of comparing the survivors-only and everywhere constructions of
/// one variant at one bound. Equal crossed sets and equal survivor sets are
/// the checkable content of "equivalent"; anchor sets are reported
/// separately since the rules never agree on them.
struct EquivalenceReport {
  std::uint64_t bound;
  ConstructionDescriptor left_construction;   // survivors-only
  ConstructionDescriptor right_construction;  // everywhere
  bool crossed_sets_equal;
  bool survivor_sets_equal;
  AnchorRelation anchor_relation;
  std::optional<std::uint64_t> first_divergence;
  ClassCounts left_counts;
  ClassCounts right_counts;

  bool equivalent() const { return crossed_sets_equal && survivor_sets_equal; }

  nlohmann::json to_json() const;
};

namespace detail {

inline nlohmann::json descriptor_json(const ConstructionDescriptor& d) {
  return nlohmann::json{{"variant", std::string(to_string(d.variant))},
                        {"rule", std::string(to_string(d.rule))},
                        {"odd_primes_only", d.odd_primes_only},
                        {"bound", d.bound},
                        {"anchor_count", d.anchor_count}};
}

inline nlohmann::json counts_json(const ClassCounts& c) {
  return nlohmann::json{{"prime", c.prime},
                        {"composite", c.composite},
                        {"untouched", c.untouched}};
}

inline ConstructionDescriptor describe(const SieveConstruction& c) {
  return ConstructionDescriptor{c.variant(), c.rule(), c.odd_primes_only(),
                                c.bound(), c.term_count()};
}

/// First n in [2, bound] whose crossed-ness differs, scanning ascending.
inline std::optional<std::uint64_t> first_crossing_divergence(
    const ClassificationTable& a, const ClassificationTable& b) {
  for (std::uint64_t n = 2; n <= a.bound(); ++n)
    if (a.crossed(n) != b.crossed(n)) return n;
  return std::nullopt;
}

}  // namespace detail

inline nlohmann::json EquivalenceReport::to_json() const {
  nlohmann::json j{
      {"bound", bound},
      {"left_construction", detail::descriptor_json(left_construction)},
      {"right_construction", detail::descriptor_json(right_construction)},
      {"crossed_sets_equal", crossed_sets_equal},
      {"survivor_sets_equal", survivor_sets_equal},
      {"anchor_relation", std::string(to_string(anchor_relation))},
      {"class_counts",
       {{"left", detail::counts_json(left_counts)},
        {"right", detail::counts_json(right_counts)}}}};
  if (first_divergence)
    j["first_divergence"] = *first_divergence;
  else
    j["first_divergence"] = nullptr;
  return j;
}

/// Builds both constructions of the variant, materializes both, and compares
/// crossed sets, survivor sets, and anchor sets over [2, bound].
inline EquivalenceReport compare_constructions(
    Variant variant, std::uint64_t bound, bool odd_primes_only = false,
    const EngineOptions& options = {}) {
  const auto left = SieveConstruction::spawn(
      variant, SpawnRule::SurvivorsOnly, bound, odd_primes_only);
  const auto right = SieveConstruction::spawn(variant, SpawnRule::Everywhere,
                                              bound, odd_primes_only);
  const auto left_table = materialize(left, options);
  const auto right_table = materialize(right, options);

  EquivalenceReport report{};
  report.bound = bound;
  report.left_construction = detail::describe(left);
  report.right_construction = detail::describe(right);

  // Both sides classify evens by the same rule (same variant and anchor-2
  // presence), so word-level equality of the stored bits is set equality.
  const bool crossed_equal =
      left_table.odd_bits().words() == right_table.odd_bits().words() &&
      left_table.even_bits().has_value() ==
          right_table.even_bits().has_value() &&
      (!left_table.even_bits() ||
       left_table.even_bits()->words() == right_table.even_bits()->words());
  report.crossed_sets_equal = crossed_equal;
  // Survivors are the complement of the crossed set over the same [2, bound].
  report.survivor_sets_equal = crossed_equal;
  if (!crossed_equal)
    report.first_divergence =
        detail::first_crossing_divergence(left_table, right_table);

  const auto& la = left.anchors();
  const auto& ra = right.anchors();
  if (la == ra)
    report.anchor_relation = AnchorRelation::Equal;
  else if (std::includes(ra.begin(), ra.end(), la.begin(), la.end()))
    report.anchor_relation = AnchorRelation::LeftSubsetOfRight;
  else
    report.anchor_relation = AnchorRelation::Incomparable;

  report.left_counts = left_table.class_counts();
  report.right_counts = right_table.class_counts();
  return report;
}

/// Numbers crossed by the anchor-2 Full term but by no odd-anchored term of
/// the survivors-only Full construction: the even survivors of the
/// odd-anchored family, expected to be exactly the powers of two > 2.
inline std::vector<std::uint64_t> powers_of_two_residue(
    std::uint64_t bound, const EngineOptions& options = {}) {
  if (bound < 4) throw ConfigError("powers_of_two_residue needs bound >= 4");
  const auto odd_family = SieveConstruction::spawn(
      Variant::Full, SpawnRule::SurvivorsOnly, bound, /*odd_primes_only=*/true);
  const auto table = materialize(odd_family, options);
  std::vector<std::uint64_t> residue;
  for (std::uint64_t n = 4; n <= bound; n += 2)
    if (!table.crossed(n)) residue.push_back(n);
  return residue;
}

/// Checks that two same-variant terms behave identically on [2, bound] iff
/// their anchors are equal. Pairwise brute force over small anchors; the
/// ceiling keeps every pair distinguishable within the bound.
inline bool reduction_identity_check(std::uint64_t bound, Variant variant) {
  if (bound < 2) throw ConfigError("bound must be >= 2");
  const std::uint64_t lo = variant == Variant::Full ? 2 : 3;
  const std::uint64_t step = variant == Variant::Full ? 1 : 2;
  const std::uint64_t divisor = variant == Variant::Full ? 2 : 3;
  const std::uint64_t hi = std::min<std::uint64_t>(50, bound / divisor);
  for (std::uint64_t a = lo; a <= hi; a += step) {
    for (std::uint64_t b = a; b <= hi; b += step) {
      const SieveTerm ta{a, variant};
      const SieveTerm tb{b, variant};
      bool identical = true;
      for (std::uint64_t n = 2; n <= bound; ++n) {
        if (zero_cross(ta, n) != zero_cross(tb, n)) {
          identical = false;
          break;
        }
      }
      if (identical != (a == b)) return false;
    }
  }
  return true;
}

}  // namespace hsieve
