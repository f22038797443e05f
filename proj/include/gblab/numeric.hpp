#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace gblab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Nonnegative residue of a mod m (m > 0).
inline i64 mod_floor(i64 a, i64 m) noexcept {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

/// Prime factorisation as (prime, exponent) pairs in ascending order.
/// Trial division; intended for the moderate integers that index
/// Ramanujan sums and singular-series factors.
std::vector<std::pair<u64, int>> factorize(u64 n);

/// Distinct prime divisors of n, ascending.
std::vector<u64> prime_divisors(u64 n);

int moebius(u64 n);
u64 euler_phi(u64 n);
u64 radical(u64 n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(u64 n);

}  // namespace gblab
