#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace hsieve {

/// Packed bitset over an arithmetic progression {first, first+2, ..., <= limit}.
/// Bit i stands for the number first + 2*i. Used with first = 3 for odd
/// numbers and first = 4 for even numbers.
class ParityBits {
 public:
  ParityBits() = default;

  ParityBits(std::uint64_t first, std::uint64_t limit)
      : first_(first),
        limit_(limit),
        count_(limit >= first ? (limit - first) / 2 + 1 : 0),
        words_((count_ + 63) / 64, 0) {}

  ParityBits(std::uint64_t first, std::uint64_t limit,
             std::vector<std::uint64_t> words)
      : first_(first),
        limit_(limit),
        count_(limit >= first ? (limit - first) / 2 + 1 : 0),
        words_(std::move(words)) {
    assert(words_.size() == (count_ + 63) / 64);
  }

  std::uint64_t first() const { return first_; }
  std::uint64_t limit() const { return limit_; }
  std::uint64_t count() const { return count_; }

  bool covers(std::uint64_t n) const {
    return n >= first_ && n <= limit_ && (n - first_) % 2 == 0;
  }

  bool test(std::uint64_t n) const {
    assert(covers(n));
    const std::uint64_t i = index_of(n);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::uint64_t n) {
    assert(covers(n));
    const std::uint64_t i = index_of(n);
    words_[i >> 6] |= 1ull << (i & 63);
  }

  /// Number of set bits among covered numbers <= n.
  std::uint64_t popcount_le(std::uint64_t n) const {
    if (count_ == 0 || n < first_) return 0;
    std::uint64_t i = (n - first_) / 2;  // last covered index <= n
    if (i >= count_) i = count_ - 1;
    std::uint64_t total = 0;
    const std::uint64_t full_words = i / 64;
    for (std::uint64_t w = 0; w < full_words; ++w)
      total += static_cast<std::uint64_t>(std::popcount(words_[w]));
    const std::uint64_t rem = i % 64 + 1;
    const std::uint64_t mask = rem == 64 ? ~0ull : (1ull << rem) - 1;
    total += static_cast<std::uint64_t>(std::popcount(words_[full_words] & mask));
    return total;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  friend bool operator==(const ParityBits& a, const ParityBits& b) = default;

 private:
  std::uint64_t index_of(std::uint64_t n) const { return (n - first_) / 2; }

  std::uint64_t first_ = 0;
  std::uint64_t limit_ = 0;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace hsieve
