// Acceptance suite: one pass/fail line per criterion, wall-clock budgets
// enforced, nonzero exit on any failure.

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hsieve/hsieve.hpp"
#include "support/oracles.hpp"

using namespace hsieve;

namespace {

struct Failure {
  std::string reason;
};

void require(bool condition, const std::string& reason) {
  if (!condition) throw Failure{reason};
}

std::string golden_path(FigureId id) {
  return std::string(HSIEVE_GOLDEN_DIR) + "/figure_" +
         std::string(figure_id_name(id)) + ".svg";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// --- criteria ---------------------------------------------------------

void oracle_equivalence() {
  for (std::uint64_t bound : {100ull, 1000ull, 10000ull, 100000ull}) {
    const auto classical = classical_sieve(bound);
    const auto harmonic = materialize(SieveConstruction::spawn(
        Variant::Full, SpawnRule::SurvivorsOnly, bound));
    const auto is_prime = oracle::byte_sieve(bound);
    for (std::uint64_t n = 2; n <= bound; ++n) {
      const bool composite = !is_prime[n];
      require(classical.crossed(n) == composite,
              "classical sieve disagrees with trial division at " +
                  std::to_string(n) + " (bound " + std::to_string(bound) +
                  ")");
      require(harmonic.crossed(n) == composite,
              "harmonic materialization disagrees with trial division at " +
                  std::to_string(n) + " (bound " + std::to_string(bound) +
                  ")");
    }
    require(classical.odd_bits().words() == harmonic.odd_bits().words(),
            "stored bits differ at bound " + std::to_string(bound));
  }
}

void case_equivalence() {
  const auto full = compare_constructions(Variant::Full, 100000);
  require(full.crossed_sets_equal && full.survivor_sets_equal,
          "full-variant constructions diverge");
  const auto odd = compare_constructions(Variant::OddOnly, 100000);
  require(odd.crossed_sets_equal && odd.survivor_sets_equal,
          "odd-only constructions diverge");
}

void powers_of_two() {
  std::vector<std::uint64_t> expected;
  for (std::uint64_t p = 4; p <= 1000000; p *= 2) expected.push_back(p);
  require(expected.back() == 524288, "enumeration is wrong");
  require(powers_of_two_residue(1000000) == expected,
          "residue set is not exactly the powers of two");
}

void weak_goldbach_range() {
  EngineOptions engine;
  engine.workers = 0;  // available parallelism
  const auto table = classical_sieve(10000000, engine);
  VerifyOptions options;
  options.workers = 0;
  const auto report = verify_range(9, 10000000, table, options);
  require(report.completed, "run did not complete");
  require(report.failures.empty(), "counterexample reported");
  require(report.verified_count == 4999996,
          "verified count is " + std::to_string(report.verified_count));
}

void decomposition_oracle_agreement() {
  const auto table = classical_sieve(10000);
  const auto is_prime = oracle::byte_sieve(10000);
  std::vector<std::uint64_t> odd_primes;
  for (std::uint64_t p = 3; p <= 9999; p += 2)
    if (is_prime[p]) odd_primes.push_back(p);
  for (std::uint64_t n = 9; n <= 9999; n += 2) {
    const auto expected =
        oracle::brute_force_lexmin_triple(n, is_prime, odd_primes);
    require(expected.has_value(),
            "oracle found no triple for " + std::to_string(n));
    const auto triple = decompose_weak(n, table);
    require(triple.p1 == std::get<0>(*expected) &&
                triple.p2 == std::get<1>(*expected) &&
                triple.p3 == std::get<2>(*expected),
            "triple mismatch at " + std::to_string(n));
  }
}

void three_odds_property() {
  require(three_odds_sum_property(1000000, 42),
          "a sampled triple summed outside the odd numbers > 7");
}

void resume_equivalence() {
  oracle::TempDir dir;
  const std::uint64_t lo = 9, hi = 299999;
  const auto table = classical_sieve(hi);

  VerifyOptions plain;
  plain.checkpoint_path = dir.file("uninterrupted.ckpt");
  plain.segment = 8192;
  plain.workers = 2;
  const auto uninterrupted = verify_range(lo, hi, table, plain);

  VerifyOptions interrupted = plain;
  interrupted.checkpoint_path = dir.file("interrupted.ckpt");
  std::mt19937_64 rng(42);
  VerificationReport report;
  for (int kill = 0; kill < 3; ++kill) {
    const std::uint64_t stop_after = 1 + rng() % 5;
    std::uint64_t seen = 0;
    interrupted.progress = [&](const CheckpointRecord&) {
      return ++seen < stop_after;
    };
    report = verify_range(lo, hi, table, interrupted);
    if (report.completed) break;
  }
  interrupted.progress = nullptr;
  report = verify_range(lo, hi, table, interrupted);
  require(report.completed, "resumed run did not complete");

  auto a = uninterrupted.to_json();
  auto b = report.to_json();
  a.erase("wall_time_seconds");
  b.erase("wall_time_seconds");
  require(a == b, "resumed report differs from the uninterrupted one");
  require(read_file(plain.checkpoint_path.string()) ==
              read_file(interrupted.checkpoint_path.string()),
          "checkpoint files differ");
}

void figure_reproduction() {
  for (FigureId id : kNamedFigures) {
    const auto spec = figure_spec(id);
    const auto construction = figure_construction(id, 40);
    const auto model = build_figure_model(spec, construction);

    std::set<std::uint64_t> expected;
    for (std::uint64_t n = 2; n <= 40; ++n)
      if (!construction.crossers_of(n).empty()) expected.insert(n);
    std::set<std::uint64_t> actual;
    for (const auto& marker : model.markers) actual.insert(marker.n);
    require(actual == expected,
            std::string("marker set mismatch for figure ") +
                std::string(figure_id_name(id)));

    const auto svg = render_svg(model);
    require(svg == read_file(golden_path(id)),
            std::string("figure_") + std::string(figure_id_name(id)) +
                ".svg differs from the golden corpus");
  }
}

void cache_round_trip() {
  oracle::TempDir dir;
  const auto classical_path = dir.file("classical.hsv");
  const auto harmonic_path = dir.file("harmonic.hsv");

  const auto table = classical_sieve(1000000);
  write_prime_cache(classical_path, table);
  const auto loaded = read_prime_cache(classical_path);
  require(loaded.prime_count(1000000) == table.prime_count(1000000),
          "prime count changed across the cache round trip");
  require(loaded.prime_count(1000000) == 78498,
          "prime count at 10^6 is not 78498");

  // Independent count through a plain byte sieve.
  const auto is_prime = oracle::byte_sieve(1000000);
  std::uint64_t count = 0;
  for (std::uint64_t n = 2; n <= 1000000; ++n) count += is_prime[n];
  require(count == 78498, "independent sieve disagrees at 10^6");

  write_prime_cache(harmonic_path,
                    materialize(SieveConstruction::spawn(
                        Variant::Full, SpawnRule::SurvivorsOnly, 1000000)));
  require(read_file(classical_path.string()) ==
              read_file(harmonic_path.string()),
          "harmonic and classical caches differ");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<void()> run;
  };
  const std::vector<Criterion> criteria{
      {"oracle-equivalence", 5.0, oracle_equivalence},
      {"case-equivalence", 10.0, case_equivalence},
      {"powers-of-two-residue", 5.0, powers_of_two},
      {"weak-goldbach-9-to-10^7", 300.0, weak_goldbach_range},
      {"decomposition-oracle-agreement", 30.0, decomposition_oracle_agreement},
      {"three-odds-sum-property", 2.0, three_odds_property},
      {"resume-equivalence", 60.0, resume_equivalence},
      {"figure-reproduction", 30.0, figure_reproduction},
      {"cache-round-trip", 30.0, cache_round_trip},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      criterion.run();
    } catch (const Failure& f) {
      error = f.reason;
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ostringstream line;
    if (error.empty() && elapsed > criterion.budget_seconds)
      error = "exceeded the " + std::to_string(criterion.budget_seconds) +
              " s budget";
    if (error.empty()) {
      line << "[PASS] " << criterion.name << " (" << elapsed << " s, budget "
           << criterion.budget_seconds << " s)";
    } else {
      line << "[FAIL] " << criterion.name << " (" << elapsed
           << " s): " << error;
      ++failures;
    }
    std::cout << line.str() << std::endl;
  }
  if (failures != 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance criteria passed" << std::endl;
  return 0;
}
