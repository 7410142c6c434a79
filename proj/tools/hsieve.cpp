// hsieve: harmonic sieve toolkit.
//
// Subcommands: sieve (build tables / prime caches), compare (survivors-only
// vs everywhere equivalence reports), verify (weak Goldbach range runs with
// resumable checkpoints), plot (SVG figures), bench (oracle timings).
//
// Exit codes: 0 success, 1 equivalence divergence, 2 configuration error,
// 3 capacity error, 4 Goldbach counterexample.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsieve/hsieve.hpp"
#include "hsieve/run_config.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDivergence = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitCounterexample = 4;

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    if (j.empty()) out.emplace_back(prefix, "[]");
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

/// JSON, key=value text, or single-row CSV with identical numeric content.
void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump() << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> fields;
  flatten(j, "", fields);
  if (format == "text") {
    for (const auto& [key, value] : fields)
      std::cout << key << "=" << value << "\n";
    return;
  }
  if (format == "csv") {
    std::string header, row;
    for (const auto& [key, value] : fields) {
      if (!header.empty()) {
        header += ",";
        row += ",";
      }
      header += key;
      std::string cell = value;
      if (cell.find(',') != std::string::npos) cell = "\"" + cell + "\"";
      row += cell;
    }
    std::cout << header << "\n" << row << "\n";
    return;
  }
  throw hsieve::ConfigError("unknown format: " + format);
}

std::uint64_t resolve_memory_budget(const std::string& flag_value) {
  if (!flag_value.empty()) return hsieve::parse_byte_size(flag_value);
  if (const char* env = std::getenv("HSV_MEMORY_BUDGET"))
    return hsieve::parse_byte_size(env);
  return hsieve::kDefaultMemoryBudget;
}

hsieve::Variant parse_variant(const std::string& name) {
  if (name == "full") return hsieve::Variant::Full;
  if (name == "odd-only" || name == "odd_only") return hsieve::Variant::OddOnly;
  throw hsieve::ConfigError("unknown variant: " + name);
}

std::vector<std::uint64_t> parse_anchor_list(const std::string& csv) {
  std::vector<std::uint64_t> anchors;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    anchors.push_back(std::stoull(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return anchors;
}

hsieve::ClassificationTable build_table(const hsieve::RunConfig& cfg,
                                        const hsieve::EngineOptions& engine) {
  if (cfg.oracle == "classical") {
    if (cfg.variant != "full" || cfg.odd_primes_only)
      throw hsieve::ConfigError(
          "the classical oracle has no variant or odd-primes-only form");
    return hsieve::classical_sieve(cfg.bound, engine);
  }
  hsieve::SpawnRule rule;
  if (cfg.oracle == "harmonic-case1") {
    rule = hsieve::SpawnRule::SurvivorsOnly;
  } else if (cfg.oracle == "harmonic-case2") {
    rule = hsieve::SpawnRule::Everywhere;
  } else {
    throw hsieve::ConfigError("unknown oracle: " + cfg.oracle);
  }
  const auto construction = hsieve::SieveConstruction::spawn(
      parse_variant(cfg.variant), rule, cfg.bound, cfg.odd_primes_only);
  return hsieve::materialize(construction, engine);
}

int cmd_sieve(const hsieve::RunConfig& cfg) {
  hsieve::EngineOptions engine{cfg.segment_length, cfg.memory_budget,
                               cfg.workers};
  const auto start = std::chrono::steady_clock::now();
  const auto table = build_table(cfg, engine);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!cfg.cache_out.empty())
    hsieve::write_prime_cache(cfg.cache_out, table);

  const auto counts = table.class_counts();
  json summary{{"bound", table.bound()},
               {"oracle", cfg.oracle},
               {"variant", cfg.variant},
               {"odd_primes_only", cfg.odd_primes_only},
               {"composite_count", counts.composite},
               {"untouched_count", counts.untouched},
               {"elapsed_seconds", elapsed}};
  if (table.decodes_primes()) {
    summary["prime_count"] = table.prime_count(table.bound());
    summary["max_prime"] = table.max_prime();
  } else {
    summary["prime_count"] = nullptr;
    summary["max_prime"] = nullptr;
  }
  summary["cache"] = cfg.cache_out.empty() ? json(nullptr) : json(cfg.cache_out);
  emit(summary, cfg.format);
  return kExitOk;
}

int cmd_compare(const hsieve::RunConfig& cfg) {
  if (cfg.format == "csv")
    throw hsieve::ConfigError("compare reports have no CSV form");
  hsieve::EngineOptions engine{cfg.segment_length, cfg.memory_budget,
                               cfg.workers};
  const auto report = hsieve::compare_constructions(
      parse_variant(cfg.variant), cfg.bound, cfg.odd_primes_only, engine);
  emit(report.to_json(), cfg.format);
  return report.equivalent() ? kExitOk : kExitDivergence;
}

int cmd_verify(const hsieve::RunConfig& cfg) {
  hsieve::EngineOptions engine{cfg.segment_length, cfg.memory_budget,
                               cfg.workers};
  std::optional<hsieve::ClassificationTable> table;
  if (!cfg.cache_path.empty()) {
    table = hsieve::read_prime_cache(cfg.cache_path);
    if (table->bound() < cfg.hi)
      throw hsieve::ConfigError(
          "cache bound " + std::to_string(table->bound()) +
          " is smaller than --hi " + std::to_string(cfg.hi) +
          "; re-sieve explicitly");
  } else {
    table = hsieve::classical_sieve(cfg.hi, engine);
  }

  hsieve::VerifyOptions options;
  options.checkpoint_path = cfg.checkpoint_path;
  options.segment = cfg.segment;
  options.workers = cfg.workers;
  options.count_representations = cfg.count_reps;
  if (!cfg.checkpoint_path.empty())
    options.sentinel_path =
        std::filesystem::path(cfg.checkpoint_path).parent_path() /
        "goldbach_counterexample.txt";

  const auto report = hsieve::verify_range(cfg.lo, cfg.hi, *table, options);
  if (cfg.format == "csv")
    std::cout << report.to_csv();
  else
    emit(report.to_json(), cfg.format);
  if (!cfg.output_path.empty()) {
    std::ofstream out(cfg.output_path, std::ios::trunc);
    if (!out)
      throw hsieve::ConfigError("cannot write report: " + cfg.output_path);
    out << report.to_json().dump() << "\n";
  }
  if (!report.failures.empty()) {
    std::cerr << "counterexample found; see sentinel file" << std::endl;
    return kExitCounterexample;
  }
  return kExitOk;
}

int cmd_plot(const hsieve::RunConfig& cfg) {
  const auto id = hsieve::parse_figure_id(cfg.figure);
  if (!id) throw hsieve::ConfigError("unknown figure id: " + cfg.figure);
  hsieve::PlotSpec spec = hsieve::figure_spec(*id);
  spec.x_min = cfg.x_min;
  spec.x_max = cfg.x_max;
  spec.amplitude = cfg.amplitude;
  spec.sample_step = cfg.sample_step;

  std::string svg;
  if (*id == hsieve::FigureId::Custom) {
    const std::uint64_t bound = std::max<std::uint64_t>(
        2, static_cast<std::uint64_t>(std::ceil(spec.x_max)));
    const auto construction =
        cfg.anchors.empty()
            ? hsieve::SieveConstruction::spawn(
                  parse_variant(cfg.variant),
                  cfg.oracle == "harmonic-case2"
                      ? hsieve::SpawnRule::Everywhere
                      : hsieve::SpawnRule::SurvivorsOnly,
                  bound, cfg.odd_primes_only)
            : hsieve::SieveConstruction::from_anchors(
                  parse_variant(cfg.variant), hsieve::SpawnRule::SurvivorsOnly,
                  bound, cfg.odd_primes_only, parse_anchor_list(cfg.anchors));
    svg = hsieve::render_figure(spec, construction);
  } else {
    svg = hsieve::render_named_figure(*id, spec);
  }

  const std::string path =
      cfg.plot_out.empty() ? "figure_" + cfg.figure + ".svg" : cfg.plot_out;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw hsieve::ConfigError("cannot write figure: " + path);
  out << svg;
  out.flush();
  if (!out) throw hsieve::ConfigError("failed writing figure: " + path);
  emit(json{{"figure", cfg.figure}, {"path", path}, {"bytes", svg.size()}},
       cfg.format);
  return kExitOk;
}

int cmd_bench(const hsieve::RunConfig& cfg) {
  hsieve::EngineOptions engine{cfg.segment_length, cfg.memory_budget,
                               cfg.workers};
  json results = json::array();
  auto time_one = [&](const std::string& name, auto&& build) {
    const auto start = std::chrono::steady_clock::now();
    const hsieve::ClassificationTable table = build();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    results.push_back(
        json{{"oracle", name},
             {"seconds", seconds},
             {"numbers_per_second",
              seconds > 0 ? static_cast<double>(cfg.bound) / seconds : 0.0},
             {"prime_count", table.prime_count(table.bound())}});
  };
  time_one("classical",
           [&] { return hsieve::classical_sieve(cfg.bound, engine); });
  time_one("harmonic-case1", [&] {
    return hsieve::materialize(
        hsieve::SieveConstruction::spawn(hsieve::Variant::Full,
                                         hsieve::SpawnRule::SurvivorsOnly,
                                         cfg.bound),
        engine);
  });
  time_one("harmonic-case2", [&] {
    return hsieve::materialize(
        hsieve::SieveConstruction::spawn(hsieve::Variant::Full,
                                         hsieve::SpawnRule::Everywhere,
                                         cfg.bound),
        engine);
  });
  emit(json{{"bound", cfg.bound}, {"results", results}}, cfg.format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  hsieve::RunConfig cfg;
  std::string memory_budget_flag;

  CLI::App app{"harmonic sieve toolkit: prime decoding, construction "
               "equivalence, weak Goldbach verification, figures"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "Output format: json, text, csv")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  app.add_option("--workers", cfg.workers,
                 "Worker threads (0 = available parallelism)");
  app.add_option("--memory-budget", memory_budget_flag,
                 "Memory budget in bytes (K/M/G suffixes allowed); "
                 "overrides HSV_MEMORY_BUDGET");
  app.add_option("--seed", cfg.seed, "Seed for sampling operations");

  auto* sieve = app.add_subcommand("sieve", "Sieve [2, bound] and report or "
                                            "cache the table");
  sieve->add_option("--bound", cfg.bound, "Upper bound (inclusive)")
      ->required();
  sieve->add_option("--oracle", cfg.oracle,
                    "classical, harmonic-case1, or harmonic-case2")
      ->check(CLI::IsMember({"classical", "harmonic-case1", "harmonic-case2"}))
      ->capture_default_str();
  sieve->add_option("--variant", cfg.variant, "full or odd-only")
      ->capture_default_str();
  sieve->add_flag("--odd-primes-only", cfg.odd_primes_only,
                  "Drop the anchor-2 term (Full variant only)");
  sieve->add_option("--cache-out", cfg.cache_out, "Write an HSV1 prime cache");
  sieve->add_option("--segment-length", cfg.segment_length,
                    "Segment length in numbers (power of two >= 64)");

  auto* compare = app.add_subcommand(
      "compare", "Compare survivors-only vs everywhere constructions");
  compare->add_option("--bound", cfg.bound, "Upper bound (inclusive)")
      ->required();
  compare->add_option("--variant", cfg.variant, "full or odd-only")
      ->capture_default_str();
  compare->add_flag("--odd-primes-only", cfg.odd_primes_only,
                    "Drop the anchor-2 term (Full variant only)");

  auto* verify = app.add_subcommand(
      "verify", "Verify the weak Goldbach property over [lo, hi]");
  verify->add_option("--lo", cfg.lo, "Range start (>= 9)")->required();
  verify->add_option("--hi", cfg.hi, "Range end (inclusive)")->required();
  verify->add_option("--checkpoint", cfg.checkpoint_path,
                     "Checkpoint file; resumes when it exists");
  verify->add_option("--segment", cfg.segment,
                     "Odd numbers per checkpoint record");
  verify->add_option("--cache", cfg.cache_path, "HSV1 prime cache to load");
  verify->add_flag("--count-reps", cfg.count_reps,
                   "Track min/max representation counts (hi <= 10^6)");
  verify->add_option("--output", cfg.output_path,
                     "Also write the JSON report to a file");

  auto* plot = app.add_subcommand("plot", "Render a figure as SVG");
  plot->add_option("--figure", cfg.figure,
                   "progression, full2, full23, full235, full2357, "
                   "full235711, odd3, odd35, odd357, odd35711, oddall, custom")
      ->required();
  plot->add_option("--out", cfg.plot_out, "Output path (default "
                                          "figure_<id>.svg)");
  plot->add_option("--x-min", cfg.x_min, "Left edge of the number line")
      ->capture_default_str();
  plot->add_option("--x-max", cfg.x_max, "Right edge of the number line")
      ->capture_default_str();
  plot->add_option("--amplitude", cfg.amplitude, "Wave amplitude in (0, 1]")
      ->capture_default_str();
  plot->add_option("--sample-step", cfg.sample_step, "Sampling step")
      ->capture_default_str();
  plot->add_option("--variant", cfg.variant, "Custom figures: full or "
                                             "odd-only")
      ->capture_default_str();
  plot->add_flag("--odd-primes-only", cfg.odd_primes_only,
                 "Custom figures: drop the anchor-2 term");
  plot->add_option("--anchors", cfg.anchors,
                   "Custom figures: comma-separated anchor list");

  auto* bench = app.add_subcommand(
      "bench", "Time classical vs harmonic materialization");
  bench->add_option("--bound", cfg.bound, "Upper bound (inclusive)")
      ->required();
  bench->add_option("--segment-length", cfg.segment_length,
                    "Segment length in numbers (power of two >= 64)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    cfg.memory_budget = resolve_memory_budget(memory_budget_flag);
    if (sieve->parsed()) {
      cfg.subcommand = "sieve";
      return cmd_sieve(cfg);
    }
    if (compare->parsed()) {
      cfg.subcommand = "compare";
      return cmd_compare(cfg);
    }
    if (verify->parsed()) {
      cfg.subcommand = "verify";
      return cmd_verify(cfg);
    }
    if (plot->parsed()) {
      cfg.subcommand = "plot";
      return cmd_plot(cfg);
    }
    if (bench->parsed()) {
      cfg.subcommand = "bench";
      return cmd_bench(cfg);
    }
    throw hsieve::ConfigError("no subcommand given");
  } catch (const hsieve::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << std::endl;
    return kExitCapacity;
  } catch (const hsieve::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitConfig;
  }
}
