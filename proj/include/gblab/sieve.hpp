#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "gblab/numeric.hpp"

namespace gblab {

struct SieveOptions {
  u64 segment_size = u64{1} << 20;        // numbers per segment, rounded up to a multiple of 64
  u64 memory_budget_bits = u64{1} << 31;  // LimitTooLarge above this
  unsigned threads = 1;
};

/// Primality bitset over [0, limit]; bit m is set iff m is prime.
class PrimeTable {
 public:
  PrimeTable() = default;

  u64 limit() const noexcept { return limit_; }
  u64 prime_count() const noexcept { return count_; }

  bool is_prime(u64 m) const noexcept {
    return m <= limit_ && ((words_[m >> 6] >> (m & 63)) & 1u) != 0;
  }

  /// Calls fn(p) for every prime p in [lo, hi], ascending. hi is clamped to
  /// limit().
  template <class Fn>
  void for_each_prime(u64 lo, u64 hi, Fn&& fn) const {
    if (hi > limit_) hi = limit_;
    if (lo > hi) return;
    u64 w = lo >> 6;
    const u64 last = hi >> 6;
    u64 bits = words_[w] & (~u64{0} << (lo & 63));
    for (;;) {
      if (w == last && (hi & 63) != 63) bits &= (u64{1} << ((hi & 63) + 1)) - 1;
      while (bits) {
        fn((w << 6) | static_cast<u64>(__builtin_ctzll(bits)));
        bits &= bits - 1;
      }
      if (w == last) break;
      bits = words_[++w];
    }
  }

  std::vector<u64> primes(u64 lo, u64 hi) const;

  std::span<const u64> words() const noexcept { return words_; }

  /// Binary cache: "GBL1", limit as 8-byte little endian, then the bitset
  /// bytes (bit m in byte m/8, position m%8).
  void save(const std::filesystem::path& file) const;
  /// Throws CacheFormat on bad magic, truncated data or a limit mismatch.
  static PrimeTable load(const std::filesystem::path& file, u64 expected_limit);

 private:
  friend PrimeTable sieve_primes(u64, const SieveOptions&);
  void recount();

  u64 limit_ = 0;
  u64 count_ = 0;
  std::vector<u64> words_;
};

/// Segmented sieve of Eratosthenes over [0, limit]. limit >= 2.
PrimeTable sieve_primes(u64 limit, const SieveOptions& opts = {});

/// Loads the table from $GOLDBACH_LAB_CACHE when a matching cache file is
/// present; otherwise sieves and (if the variable is set) writes the cache.
PrimeTable cached_sieve(u64 limit, const SieveOptions& opts = {});

/// Primes p with P < p <= X and p == i (mod g), with natural-log weights.
struct ClassPrimes {
  u64 g = 1;
  u64 i = 0;
  u64 P = 1;
  u64 X = 0;
  std::vector<u64> primes;
  std::vector<double> logs;

  std::size_t size() const noexcept { return primes.size(); }
  bool empty() const noexcept { return primes.empty(); }
};

/// Throws BoundsExceeded when X > table.limit().
ClassPrimes primes_in_class(const PrimeTable& table, u64 g, u64 i, u64 P, u64 X);

/// Sum of log p over the class, compensated. Equals S_i(0).
double chebyshev_theta(const ClassPrimes& cp);

}  // namespace gblab
