#include <doctest.h>

#include "gblab/numeric.hpp"

using namespace gblab;

TEST_CASE("multiplicative functions against brute force") {
  for (u64 n = 1; n <= 2000; ++n) {
    u64 phi = 0;
    for (u64 a = 1; a <= n; ++a) phi += std::gcd(a, n) == 1;
    CHECK(euler_phi(n) == phi);
    int mu = 1;
    u64 m = n;
    for (u64 p = 2; p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) {
        mu = 0;
        break;
      }
      mu = -mu;
    }
    CHECK(moebius(n) == mu);
  }
  CHECK(radical(72) == 6);
  CHECK(prime_divisors(360) == std::vector<u64>{2, 3, 5});
}

TEST_CASE("is_prime_u64") {
  CHECK(is_prime_u64(2));
  CHECK_FALSE(is_prime_u64(1));
  CHECK(is_prime_u64(4611615649683210241ULL));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2,3,5,7
  CHECK(is_prime_u64(18446744073709551557ULL));
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1e16);
  for (int k = 0; k < 1000; ++k) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
  CHECK(mod_floor(-7, 4) == 1);
}
