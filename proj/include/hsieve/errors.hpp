#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsieve {

/// Invalid option combination or violated precondition.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested allocation would exceed the configured memory budget.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::uint64_t required_bytes, std::uint64_t budget_bytes)
      : std::runtime_error("requires " + std::to_string(required_bytes) +
                           " bytes but the memory budget is " +
                           std::to_string(budget_bytes) + " bytes"),
        required_bytes_(required_bytes),
        budget_bytes_(budget_bytes) {}

  std::uint64_t required_bytes() const noexcept { return required_bytes_; }
  std::uint64_t budget_bytes() const noexcept { return budget_bytes_; }

 private:
  std::uint64_t required_bytes_;
  std::uint64_t budget_bytes_;
};

/// Raised when an odd n > 7 admits no decomposition into three odd primes.
/// This would be a counterexample to the weak Goldbach property; callers must
/// surface it, never swallow it.
class NoTripleFound : public std::runtime_error {
 public:
  explicit NoTripleFound(std::uint64_t n)
      : std::runtime_error("no triple of odd primes sums to " +
                           std::to_string(n)),
        n_(n) {}

  std::uint64_t n() const noexcept { return n_; }

 private:
  std::uint64_t n_;
};

}  // namespace hsieve
