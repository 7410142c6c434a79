#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hsieve/errors.hpp"
#include "hsieve/sieve.hpp"
#include "hsieve/util.hpp"
#include "hsieve/verify.hpp"

namespace hsieve {

/// Resolved command-line configuration. Round-trips through its canonical
/// text form; the fingerprint is the hash of that form, so it is stable
/// across platforms for equal configurations.
struct RunConfig {
  std::string subcommand;
  std::string format = "json";
  std::uint64_t bound = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  unsigned workers = 0;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
  std::uint64_t seed = 0;
  std::uint64_t segment = kDefaultVerifySegment;
  std::uint64_t segment_length = kDefaultSegmentLength;
  std::string oracle = "classical";
  std::string variant = "full";
  bool odd_primes_only = false;
  bool count_reps = false;
  std::string cache_path;
  std::string cache_out;
  std::string output_path;
  std::string checkpoint_path;
  std::string figure;
  std::string plot_out;
  double x_min = 0.0;
  double x_max = 40.0;
  double amplitude = 0.9;
  double sample_step = 0.01;
  std::string anchors;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  std::string to_text() const {
    auto num = [](double v) {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), v);
      return std::string(buf, res.ptr);
    };
    std::string out;
    auto field = [&](std::string_view key, const std::string& value) {
      out += std::string(key) + "=" + value + "\n";
    };
    field("subcommand", subcommand);
    field("format", format);
    field("bound", std::to_string(bound));
    field("lo", std::to_string(lo));
    field("hi", std::to_string(hi));
    field("workers", std::to_string(workers));
    field("memory_budget", std::to_string(memory_budget));
    field("seed", std::to_string(seed));
    field("segment", std::to_string(segment));
    field("segment_length", std::to_string(segment_length));
    field("oracle", oracle);
    field("variant", variant);
    field("odd_primes_only", odd_primes_only ? "1" : "0");
    field("count_reps", count_reps ? "1" : "0");
    field("cache_path", cache_path);
    field("cache_out", cache_out);
    field("output_path", output_path);
    field("checkpoint_path", checkpoint_path);
    field("figure", figure);
    field("plot_out", plot_out);
    field("x_min", num(x_min));
    field("x_max", num(x_max));
    field("amplitude", num(amplitude));
    field("sample_step", num(sample_step));
    field("anchors", anchors);
    return out;
  }

  static RunConfig from_text(std::string_view text) {
    RunConfig cfg;
    auto as_u64 = [](std::string_view v) {
      std::uint64_t out = 0;
      auto res = std::from_chars(v.data(), v.data() + v.size(), out);
      if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError("bad integer in config text: " + std::string(v));
      return out;
    };
    auto as_f64 = [](std::string_view v) {
      double out = 0;
      auto res = std::from_chars(v.data(), v.data() + v.size(), out);
      if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError("bad number in config text: " + std::string(v));
      return out;
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      const std::string_view line = text.substr(pos, eol - pos);
      pos = eol + 1;
      if (line.empty()) continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("bad config line: " + std::string(line));
      const std::string_view key = line.substr(0, eq);
      const std::string_view value = line.substr(eq + 1);
      if (key == "subcommand") cfg.subcommand = value;
      else if (key == "format") cfg.format = value;
      else if (key == "bound") cfg.bound = as_u64(value);
      else if (key == "lo") cfg.lo = as_u64(value);
      else if (key == "hi") cfg.hi = as_u64(value);
      else if (key == "workers") cfg.workers = static_cast<unsigned>(as_u64(value));
      else if (key == "memory_budget") cfg.memory_budget = as_u64(value);
      else if (key == "seed") cfg.seed = as_u64(value);
      else if (key == "segment") cfg.segment = as_u64(value);
      else if (key == "segment_length") cfg.segment_length = as_u64(value);
      else if (key == "oracle") cfg.oracle = value;
      else if (key == "variant") cfg.variant = value;
      else if (key == "odd_primes_only") cfg.odd_primes_only = value == "1";
      else if (key == "count_reps") cfg.count_reps = value == "1";
      else if (key == "cache_path") cfg.cache_path = value;
      else if (key == "cache_out") cfg.cache_out = value;
      else if (key == "output_path") cfg.output_path = value;
      else if (key == "checkpoint_path") cfg.checkpoint_path = value;
      else if (key == "figure") cfg.figure = value;
      else if (key == "plot_out") cfg.plot_out = value;
      else if (key == "x_min") cfg.x_min = as_f64(value);
      else if (key == "x_max") cfg.x_max = as_f64(value);
      else if (key == "amplitude") cfg.amplitude = as_f64(value);
      else if (key == "sample_step") cfg.sample_step = as_f64(value);
      else if (key == "anchors") cfg.anchors = value;
      else throw ConfigError("unknown config key: " + std::string(key));
    }
    return cfg;
  }

  std::string fingerprint() const { return to_hex16(fnv1a64(to_text())); }
};

}  // namespace hsieve
