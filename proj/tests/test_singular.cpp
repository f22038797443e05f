#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "gblab/arith.hpp"
#include "gblab/singular.hpp"

using namespace gblab;

namespace {

// Twin prime constant, independent of the library's product.
constexpr double kTwinPrime = 0.66016181584686957392781211;

double ramanujan_brute(u64 q, i64 m) {
  std::complex<double> s = 0;
  for (u64 a = 1; a <= q; ++a)
    if (std::gcd(a, q) == 1) s += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(a) * m / q);
  return s.real();
}

}  // namespace

TEST_CASE("ramanujan sum closed form vs definition") {
  for (u64 q = 1; q <= 60; ++q)
    for (i64 m = -30; m <= 30; ++m) CHECK(static_cast<double>(ramanujan_sum(q, m)) == doctest::Approx(ramanujan_brute(q, m)).epsilon(1e-9));
  CHECK(ramanujan_sum(12, 0) == 4);
}

TEST_CASE("euler product examples") {
  for (u64 k : {1, 5, 10, 20, 60}) {
    const SingularValue v = singular_series(u64{1} << k);
    CHECK(std::abs(v.value - 2 * kTwinPrime) <= v.err_bound);
  }
  const SingularValue s6 = singular_series(6);
  CHECK(std::abs(s6.value - 4 * kTwinPrime) <= s6.err_bound);
  CHECK(singular_series(1024).value == doctest::Approx(1.32032).epsilon(1e-5));
  CHECK(singular_series(6).value == doctest::Approx(2.64065).epsilon(1e-5));
  CHECK(singular_series(12).value == singular_series(6).value);
}

TEST_CASE("odd n vanishes") {
  for (u64 n : {1, 9, 105, 999}) {
    CHECK(singular_series(n).value == 0.0);
    const SingularValue p = singular_series(n, SingularMethod::PartialSum, 2000);
    CHECK(std::abs(p.value) <= p.err_bound);
  }
}

TEST_CASE("partial sum approaches the product") {
  for (u64 n : {2, 6, 30, 210, 1000, 9998}) {
    const double part = singular_series(n, SingularMethod::PartialSum, 10'000).value;
    const double prod = singular_series(n).value;
    CHECK(std::abs(part - prod) <= 5e-3);
  }
}

TEST_CASE("large prime factor above the truncation") {
  const u64 p = 1'000'003;
  const double s = singular_series(2 * p, SingularMethod::EulerProduct, 1000).value;
  const double base = singular_series(2, SingularMethod::EulerProduct, 1000).value;
  // p | n contributes 1 + 1/(p-1) even though p is beyond the truncation
  CHECK(s / base == doctest::Approx(1.0 + 1.0 / static_cast<double>(p - 1)).epsilon(1e-12));
}

TEST_CASE("main_term") {
  const GammaParams g = validate_gamma({1, 1, 2, 1, 1});
    // 2 C2 * 2^20 / 4
  CHECK(main_term(u64{1} << 20, g) == doctest::Approx(2 * kTwinPrime * 262'144.0).epsilon(1e-6));
  CHECK(main_term(7, g) == 0.0);
  const GammaParams g35 = validate_gamma({3, 5, 2, 1, 1});
  CHECK(main_term(1000, g35) == doctest::Approx(main_term(1000, g) / 15.0));
}
