#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hsieve/errors.hpp"
#include "hsieve/goldbach.hpp"
#include "hsieve/sieve.hpp"
#include "hsieve/table.hpp"
#include "hsieve/util.hpp"

namespace hsieve {

inline constexpr std::uint64_t kDefaultVerifySegment = 1ull << 16;

/// One line of the checkpoint file: "seq,last_n,verified_count,fingerprint".
struct CheckpointRecord {
  std::uint64_t seq;
  std::uint64_t last_n;
  std::uint64_t verified_count;
  std::string fingerprint;
};

struct VerifyOptions {
  std::filesystem::path checkpoint_path;  // empty = no checkpointing
  std::uint64_t segment = kDefaultVerifySegment;  // odd numbers per record
  unsigned workers = 1;                           // 0 = hardware concurrency
  bool count_representations = false;
  std::filesystem::path sentinel_path;  // default goldbach_counterexample.txt
  /// Called after each frontier advance; returning false stops the run at
  /// that checkpoint, leaving a resumable file (used to exercise resume).
  std::function<bool(const CheckpointRecord&)> progress;
};

struct CheckpointLineage {
  std::uint64_t records = 0;
  std::uint64_t last_seq = 0;
  std::uint64_t last_n = 0;
};

struct VerificationReport {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t verified_count = 0;
  std::vector<std::uint64_t> failures;
  bool success = true;    // failures empty
  bool completed = true;  // reached hi (false when stopped via progress hook)
  std::optional<std::uint64_t> min_representations;
  std::optional<std::uint64_t> max_representations;
  double wall_time_seconds = 0.0;
  std::string config_fingerprint;
  std::optional<CheckpointLineage> checkpoint;

  nlohmann::json to_json() const {
    nlohmann::json j{{"lo", lo},
                     {"hi", hi},
                     {"verified_count", verified_count},
                     {"failures", failures},
                     {"success", success},
                     {"completed", completed},
                     {"wall_time_seconds", wall_time_seconds},
                     {"config_fingerprint", config_fingerprint}};
    j["min_representations"] =
        min_representations ? nlohmann::json(*min_representations)
                            : nlohmann::json(nullptr);
    j["max_representations"] =
        max_representations ? nlohmann::json(*max_representations)
                            : nlohmann::json(nullptr);
    j["checkpoint"] = checkpoint
                          ? nlohmann::json{{"records", checkpoint->records},
                                           {"last_seq", checkpoint->last_seq},
                                           {"last_n", checkpoint->last_n}}
                          : nlohmann::json(nullptr);
    return j;
  }

  /// One row per failure; the header is always present.
  std::string to_csv() const {
    std::string out = "n\n";
    for (std::uint64_t n : failures) out += std::to_string(n) + "\n";
    return out;
  }
};

namespace detail {

/// Fixed chunk grid over the odd numbers of [max(lo,9), hi], anchored at lo
/// so that resumed runs land on identical boundaries.
struct VerifyGrid {
  std::uint64_t first_n = 0;
  std::uint64_t total_odds = 0;
  std::uint64_t segment = 1;
  std::uint64_t chunks = 0;

  static VerifyGrid make(std::uint64_t lo, std::uint64_t hi,
                         std::uint64_t segment) {
    VerifyGrid g;
    g.segment = segment;
    std::uint64_t first = lo < 9 ? 9 : lo;
    if (first % 2 == 0) ++first;
    g.first_n = first;
    if (first <= hi) {
      const std::uint64_t last = hi % 2 == 0 ? hi - 1 : hi;
      g.total_odds = (last - first) / 2 + 1;
    }
    g.chunks = (g.total_odds + segment - 1) / segment;
    return g;
  }

  std::uint64_t chunk_start(std::uint64_t i) const {
    return first_n + 2 * i * segment;
  }
  std::uint64_t chunk_size(std::uint64_t i) const {
    const std::uint64_t done = i * segment;
    return std::min(segment, total_odds - done);
  }
  std::uint64_t chunk_last(std::uint64_t i) const {
    return chunk_start(i) + 2 * (chunk_size(i) - 1);
  }
  std::uint64_t verified_through(std::uint64_t i) const {
    return std::min((i + 1) * segment, total_odds);
  }
};

struct ChunkOutcome {
  std::uint64_t verified = 0;
  std::optional<std::uint64_t> failure;
  std::optional<std::uint64_t> min_reps;
  std::optional<std::uint64_t> max_reps;
};

inline ChunkOutcome verify_chunk(const VerifyGrid& grid, std::uint64_t index,
                                 const ClassificationTable& table,
                                 std::span<const std::uint64_t> odd_primes,
                                 bool count_reps) {
  ChunkOutcome out;
  std::uint64_t n = grid.chunk_start(index);
  for (std::uint64_t k = 0; k < grid.chunk_size(index); ++k, n += 2) {
    try {
      decompose_weak(n, table);
    } catch (const NoTripleFound& e) {
      out.failure = e.n();
      return out;
    }
    if (count_reps) {
      const std::uint64_t reps = count_representations(n, table, odd_primes);
      out.min_reps = out.min_reps ? std::min(*out.min_reps, reps) : reps;
      out.max_reps = out.max_reps ? std::max(*out.max_reps, reps) : reps;
    }
    ++out.verified;
  }
  return out;
}

/// Parses surviving records of a checkpoint file. Complete lines that do not
/// match the expected grid or fingerprint are configuration errors; a
/// malformed final line is discarded as an interrupted write.
inline std::vector<CheckpointRecord> read_checkpoint(
    const std::filesystem::path& path, const VerifyGrid& grid,
    const std::string& fingerprint) {
  std::vector<CheckpointRecord> records;
  std::ifstream in(path);
  if (!in) return records;
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::istringstream fields(lines[i]);
    CheckpointRecord rec;
    char c1 = 0, c2 = 0, c3 = 0;
    const bool parsed =
        static_cast<bool>(fields >> rec.seq >> c1 >> rec.last_n >> c2 >>
                          rec.verified_count >> c3 >> rec.fingerprint) &&
        c1 == ',' && c2 == ',' && c3 == ',' && rec.fingerprint.size() == 16;
    if (!parsed) {
      if (i + 1 == lines.size()) break;  // torn final line
      throw ConfigError("corrupt checkpoint file: " + path.string());
    }
    if (rec.fingerprint != fingerprint)
      throw ConfigError("checkpoint fingerprint mismatch (different run "
                        "configuration): " + path.string());
    if (rec.seq != records.size() || rec.seq >= grid.chunks ||
        rec.last_n != grid.chunk_last(rec.seq) ||
        rec.verified_count != grid.verified_through(rec.seq))
      throw ConfigError("checkpoint does not match the verification grid: " +
                        path.string());
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace detail

inline std::string verify_fingerprint(std::uint64_t lo, std::uint64_t hi,
                                      std::uint64_t segment,
                                      const ClassificationTable& table) {
  std::string canon = "verify;lo=" + std::to_string(lo) +
                      ";hi=" + std::to_string(hi) +
                      ";segment=" + std::to_string(segment) +
                      ";table=" + table.provenance().describe() +
                      ";bound=" + std::to_string(table.bound());
  return to_hex16(fnv1a64(canon));
}

/// Verifies the weak Goldbach property for every odd n in [max(lo,9), hi].
/// Workers process disjoint chunks of a fixed grid against the shared
/// read-only table; a single frontier advances in chunk order, appending one
/// checkpoint record per completed chunk, so the report is identical for any
/// worker count and any interruption pattern.
inline VerificationReport verify_range(std::uint64_t lo, std::uint64_t hi,
                                       const ClassificationTable& table,
                                       const VerifyOptions& options = {}) {
  if (lo < 9 || lo > hi) throw ConfigError("verify range requires 9 <= lo <= hi");
  if (hi > table.bound())
    throw ConfigError("verify range exceeds the prime table bound");
  if (options.segment < 1) throw ConfigError("segment must be >= 1");
  if (options.count_representations && hi > kRepresentationGuard)
    throw ConfigError("representation counting is guarded to hi <= 10^6");
  if (options.count_representations && !options.checkpoint_path.empty())
    throw ConfigError("representation counting cannot be checkpointed "
                      "(records carry no min/max fields)");

  const auto start_time = std::chrono::steady_clock::now();
  const auto grid = detail::VerifyGrid::make(lo, hi, options.segment);
  const std::string fingerprint =
      verify_fingerprint(lo, hi, options.segment, table);

  VerificationReport report;
  report.lo = lo;
  report.hi = hi;
  report.config_fingerprint = fingerprint;

  // Resume from the last intact record, if any.
  std::uint64_t resume_chunk = 0;
  const bool checkpointing = !options.checkpoint_path.empty();
  if (checkpointing && std::filesystem::exists(options.checkpoint_path)) {
    const auto records =
        detail::read_checkpoint(options.checkpoint_path, grid, fingerprint);
    resume_chunk = records.size();
  }
  std::uint64_t records_written = resume_chunk;
  report.verified_count =
      resume_chunk == 0 ? 0 : grid.verified_through(resume_chunk - 1);

  std::ofstream checkpoint_out;
  if (checkpointing) {
    checkpoint_out.open(options.checkpoint_path,
                        std::ios::out | std::ios::app);
    if (!checkpoint_out)
      throw ConfigError("cannot open checkpoint file: " +
                        options.checkpoint_path.string());
  }

  std::vector<std::uint64_t> odd_primes;
  if (options.count_representations)
    odd_primes = odd_primes_list(table, hi);

  if (resume_chunk < grid.chunks) {
    std::atomic<std::uint64_t> next{resume_chunk};
    std::atomic<bool> stop{false};
    std::vector<std::optional<detail::ChunkOutcome>> slots(grid.chunks);
    std::mutex mutex;
    std::condition_variable ready;
    std::exception_ptr worker_error;

    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(
        detail::resolve_workers(options.workers),
        grid.chunks - resume_chunk));
    auto work = [&] {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= grid.chunks || stop.load()) return;
        detail::ChunkOutcome outcome;
        std::exception_ptr error;
        try {
          outcome = detail::verify_chunk(grid, i, table, odd_primes,
                                         options.count_representations);
        } catch (...) {
          error = std::current_exception();
        }
        {
          std::lock_guard<std::mutex> lock(mutex);
          if (error && !worker_error) worker_error = error;
          slots[i] = outcome;
        }
        ready.notify_all();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

    for (std::uint64_t f = resume_chunk; f < grid.chunks; ++f) {
      detail::ChunkOutcome outcome;
      {
        std::unique_lock<std::mutex> lock(mutex);
        ready.wait(lock, [&] { return slots[f].has_value() || worker_error; });
        if (worker_error) {
          stop.store(true);
          break;
        }
        outcome = *slots[f];
      }
      report.verified_count += outcome.verified;
      if (outcome.min_reps) {
        report.min_representations =
            report.min_representations
                ? std::min(*report.min_representations, *outcome.min_reps)
                : *outcome.min_reps;
        report.max_representations =
            report.max_representations
                ? std::max(*report.max_representations, *outcome.max_reps)
                : *outcome.max_reps;
      }
      if (outcome.failure) {
        report.failures.push_back(*outcome.failure);
        stop.store(true);
        break;
      }
      CheckpointRecord record{f, grid.chunk_last(f), report.verified_count,
                              fingerprint};
      if (checkpointing) {
        checkpoint_out << record.seq << ',' << record.last_n << ','
                       << record.verified_count << ',' << record.fingerprint
                       << '\n';
        checkpoint_out.flush();
        ++records_written;
      }
      if (options.progress && !options.progress(record)) {
        report.completed = false;
        stop.store(true);
        break;
      }
    }
    stop.store(true);
    for (auto& t : pool) t.join();
    if (worker_error) std::rethrow_exception(worker_error);
  }

  report.success = report.failures.empty();
  if (!report.failures.empty()) {
    report.completed = false;
    const auto sentinel = options.sentinel_path.empty()
                              ? std::filesystem::path("goldbach_counterexample.txt")
                              : options.sentinel_path;
    std::ofstream out(sentinel, std::ios::out | std::ios::trunc);
    for (std::uint64_t n : report.failures) out << n << '\n';
  }
  if (checkpointing && records_written > 0)
    report.checkpoint = CheckpointLineage{
        records_written, records_written - 1,
        grid.chunk_last(records_written - 1)};

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    start_time)
          .count();
  return report;
}

}  // namespace hsieve
