#include <doctest.h>

#include <random>

#include "gblab/convolution.hpp"
#include "gblab/numeric.hpp"

using namespace gblab;

namespace {

std::vector<u64> schoolbook(const std::vector<u64>& a, const std::vector<u64>& b) {
  std::vector<u64> c(a.size() + b.size() - 1);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) c[x + y] += a[x] * b[y];
  return c;
}

}  // namespace

TEST_CASE("NTT primes") {
  for (const NttPrime* p : {&kNttPrime1, &kNttPrime2}) CHECK(is_prime_u64(p->modulus));
}

TEST_CASE("ntt and direct agree with schoolbook") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 700, m = 1 + rng() % 700;
    std::vector<u64> a(n), b(m);
    for (auto& x : a) x = rng() % 3 == 0 ? rng() % 1000 : 0;
    for (auto& x : b) x = rng() % 3 == 0 ? rng() % 1000 : 0;
    const auto want = schoolbook(a, b);
    CHECK(convolve_ntt(a, b) == want);
    CHECK(convolve_direct(a, b) == want);
    CHECK(convolve_exact(a, b, 0) == want);
  }
}

TEST_CASE("large values need both primes") {
  std::vector<u64> a(64, u64{1} << 28), b(64, u64{1} << 28);
  CHECK(convolve_ntt(a, b) == schoolbook(a, b));
}

TEST_CASE("real convolution") {
  Eigen::VectorXd a(3), b(2);
  a << 1.0, 2.0, 3.0;
  b << 0.5, -1.0;
  const Eigen::VectorXd c = convolve_real(a, b);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c[2] == doctest::Approx(-0.5));
  CHECK(c[3] == doctest::Approx(-3.0));
}
