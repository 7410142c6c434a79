#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "hsieve/sieve.hpp"
#include "support/oracles.hpp"

using namespace hsieve;

namespace {

std::set<std::uint64_t> crossed_set(const ClassificationTable& t) {
  std::set<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= t.bound(); ++n)
    if (t.crossed(n)) out.insert(n);
  return out;
}

std::vector<std::uint64_t> primes_of(const ClassificationTable& t) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : t.primes()) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("classical sieve matches trial division") {
  const auto table = classical_sieve(30);
  CHECK(primes_of(table) ==
        std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});

  const auto big = classical_sieve(3000);
  const auto is_prime = oracle::byte_sieve(3000);
  for (std::uint64_t n = 2; n <= 3000; ++n)
    CHECK(big.verdict(n) ==
          (is_prime[n] ? Verdict::Prime : Verdict::Composite));
}

TEST_CASE("smallest bound decodes only 2") {
  const auto table = classical_sieve(2);
  CHECK(primes_of(table) == std::vector<std::uint64_t>{2});
  CHECK(table.prime_count(2) == 1);
  CHECK(table.max_prime() == 2);
}

TEST_CASE("prime counts at pinned checkpoints") {
  const auto table = classical_sieve(10000);
  CHECK(table.prime_count(10000) == 1229);
  CHECK(table.prime_count(1000) == 168);
  CHECK(table.prime_count(100) == 25);
  CHECK(table.prime_count(2) == 1);
  CHECK_THROWS_AS(table.prime_count(10001), std::out_of_range);
}

TEST_CASE("sieve output is identical for any segmentation or worker count") {
  const auto reference = classical_sieve(100000);
  for (std::uint64_t segment : {64ull, 256ull, 1ull << 12, 1ull << 20}) {
    EngineOptions options;
    options.segment_length = segment;
    CHECK(classical_sieve(100000, options).odd_bits().words() ==
          reference.odd_bits().words());
  }
  for (unsigned workers : {2u, 3u, 8u}) {
    EngineOptions options;
    options.workers = workers;
    CHECK(classical_sieve(100000, options).odd_bits().words() ==
          reference.odd_bits().words());
  }
}

TEST_CASE("segment plans validate their shape") {
  CHECK(make_segment_plan(100).base_primes_bound == 10);
  CHECK(make_segment_plan(101).base_primes_bound == 11);
  CHECK_THROWS_AS(make_segment_plan(100, 63), ConfigError);
  CHECK_THROWS_AS(make_segment_plan(100, 100), ConfigError);
}

TEST_CASE("tables at different bounds agree on the shared prefix") {
  const auto small = classical_sieve(500);
  const auto large = classical_sieve(1000);
  for (std::uint64_t n = 2; n <= 500; ++n)
    CHECK(small.crossed(n) == large.crossed(n));
}

TEST_CASE("materialized full construction matches the classical oracle") {
  const auto construction =
      SieveConstruction::spawn(Variant::Full, SpawnRule::SurvivorsOnly, 12);
  const auto table = materialize(construction);
  CHECK(crossed_set(table) == std::set<std::uint64_t>{4, 6, 8, 9, 10, 12});

  const auto harmonic = materialize(
      SieveConstruction::spawn(Variant::Full, SpawnRule::SurvivorsOnly, 10000));
  const auto classical = classical_sieve(10000);
  CHECK(harmonic.odd_bits().words() == classical.odd_bits().words());
  for (std::uint64_t n : {2ull, 4ull, 9973ull, 10000ull})
    CHECK(harmonic.crossed(n) == classical.crossed(n));
}

TEST_CASE("odd-only tables cross the odd composites and skip evens") {
  const auto table = materialize(
      SieveConstruction::spawn(Variant::OddOnly, SpawnRule::SurvivorsOnly, 25));
  std::set<std::uint64_t> crossed_odds;
  for (std::uint64_t n = 3; n <= 25; n += 2)
    if (table.crossed(n)) crossed_odds.insert(n);
  CHECK(crossed_odds == std::set<std::uint64_t>{9, 15, 21, 25});
  for (std::uint64_t n = 2; n <= 24; n += 2) {
    CHECK_FALSE(table.crossed(n));
    CHECK(table.verdict(n) == Verdict::Untouched);
  }
  CHECK(table.verdict(13) == Verdict::Prime);
}

TEST_CASE("odd-only survivors are exactly the odd primes") {
  const auto table = materialize(
      SieveConstruction::spawn(Variant::OddOnly, SpawnRule::SurvivorsOnly,
                               1000));
  const auto is_prime = oracle::byte_sieve(1000);
  for (std::uint64_t n = 3; n <= 1000; n += 2)
    CHECK(table.crossed(n) == !is_prime[n]);
  CHECK(table.prime_count(1000) == 167);  // odd primes; 2 is not decoded
}

TEST_CASE("the odd-anchored family leaves powers of two untouched") {
  const auto table = materialize(SieveConstruction::spawn(
      Variant::Full, SpawnRule::SurvivorsOnly, 16, /*odd_primes_only=*/true));
  std::set<std::uint64_t> untouched;
  for (std::uint64_t n = 2; n <= 16; ++n)
    if (table.verdict(n) == Verdict::Untouched) untouched.insert(n);
  CHECK(untouched == std::set<std::uint64_t>{2, 3, 4, 5, 7, 8, 11, 13, 16});
  CHECK_FALSE(table.decodes_primes());
  CHECK_THROWS_AS(table.prime_count(16), ConfigError);
  CHECK_THROWS_AS(table.primes(), ConfigError);
}

TEST_CASE("prime iteration streams the survivors in order") {
  const auto table = classical_sieve(10);
  CHECK(primes_of(table) == std::vector<std::uint64_t>{2, 3, 5, 7});

  const auto century = classical_sieve(100);
  std::uint64_t count = 0;
  std::uint64_t last = 0;
  for (std::uint64_t p : century.primes()) {
    CHECK(p > last);
    last = p;
    ++count;
  }
  CHECK(count == 25);
  CHECK(last == 97);
  CHECK(century.max_prime() == 97);
}

TEST_CASE("class counts agree with a per-number verdict scan") {
  const auto tables = {
      classical_sieve(100),
      materialize(SieveConstruction::spawn(Variant::Full,
                                           SpawnRule::SurvivorsOnly, 100)),
      materialize(SieveConstruction::spawn(Variant::Full,
                                           SpawnRule::Everywhere, 100)),
      materialize(SieveConstruction::spawn(Variant::OddOnly,
                                           SpawnRule::SurvivorsOnly, 100)),
      materialize(SieveConstruction::spawn(Variant::Full,
                                           SpawnRule::SurvivorsOnly, 100,
                                           true)),
  };
  for (const auto& table : tables) {
    ClassCounts scanned;
    for (std::uint64_t n = 2; n <= table.bound(); ++n) {
      switch (table.verdict(n)) {
        case Verdict::Prime: ++scanned.prime; break;
        case Verdict::Composite: ++scanned.composite; break;
        case Verdict::Untouched: ++scanned.untouched; break;
      }
    }
    const auto counts = table.class_counts();
    CHECK(counts.prime == scanned.prime);
    CHECK(counts.composite == scanned.composite);
    CHECK(counts.untouched == scanned.untouched);
  }
}

TEST_CASE("memory budget failures name the budget") {
  EngineOptions tight;
  tight.memory_budget = 1000;
  try {
    classical_sieve(1'000'000'000ull, tight);
    FAIL("expected a capacity error");
  } catch (const CapacityError& e) {
    CHECK(e.budget_bytes() == 1000);
    CHECK(e.required_bytes() > e.budget_bytes());
    CHECK(std::string(e.what()).find("1000") != std::string::npos);
  }
  CHECK_THROWS_AS(
      materialize(SieveConstruction::spawn(Variant::Full,
                                           SpawnRule::SurvivorsOnly, 1000000),
                  tight),
      CapacityError);
}

TEST_CASE("sieve rejects bounds below 2") {
  CHECK_THROWS_AS(classical_sieve(1), ConfigError);
  CHECK_THROWS_AS(classical_sieve(0), ConfigError);
}
