#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "gblab/error.hpp"
#include "gblab/repcount.hpp"

using namespace gblab;

namespace {

// Pair enumeration straight from the definition, with its own trial division.
struct Brute {
  u64 count = 0;
  double weighted = 0.0;
};

bool prime_td(u64 m) {
  if (m < 2) return false;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

Brute brute(u64 n, const GammaParams& g, u64 P, u64 X) {
  Brute b;
  for (u64 p1 = P + 1; p1 <= X; ++p1) {
    if (!prime_td(p1) || p1 % g.g != g.i || g.A * p1 >= n + 1) continue;
    const u64 rest = n - g.A * p1;
    if (rest % g.B) continue;
    const u64 p2 = rest / g.B;
    if (p2 <= P || p2 > X || !prime_td(p2) || p2 % g.g != g.j) continue;
    ++b.count;
    b.weighted += std::log(static_cast<double>(p1)) * std::log(static_cast<double>(p2));
  }
  return b;
}

}  // namespace

TEST_CASE("rep_direct examples") {
  const PrimeTable t = sieve_primes(1000);
  const RepRecord r = rep_direct(t, 10, validate_gamma({1, 1, 2, 1, 1}), 1, 10);
  CHECK(r.count == 3);
  CHECK(r.unordered() == 2);
  const double w = 2 * std::log(3.0) * std::log(7.0) + std::log(5.0) * std::log(5.0);
  CHECK(r.weighted == doctest::Approx(w).epsilon(1e-12));
  REQUIRE(r.witness);
  CHECK(r.witness->first == 3);
  CHECK(r.witness->second == 7);
  CHECK(rep_direct(t, 11, validate_gamma({1, 1, 2, 1, 1}), 1, 11).count == 0);
  // j = 2 is not a unit mod 4; the only candidate p2 = 2 leaves 3 p1 = 21, p1 = 7 == 3 (mod 4)
  CHECK_THROWS_AS(validate_gamma({3, 1, 4, 1, 2}), Error);
  CHECK(brute(23, GammaParams{3, 1, 4, 1, 2}, 1, 23).count == 0);
  CHECK(rep_direct(t, 23, validate_gamma({3, 1, 4, 1, 3}), 1, 23).count == brute(23, GammaParams{3, 1, 4, 1, 3}, 1, 23).count);
  CHECK_THROWS_AS(rep_direct(t, 5000, validate_gamma({1, 1, 2, 1, 1}), 1, 5000), Error);
}

TEST_CASE("rep_direct vs brute force") {
  std::mt19937_64 rng(17);
  const PrimeTable t = sieve_primes(3000);
  for (int trial = 0; trial < 300; ++trial) {
    GammaParams g{1 + 2 * (rng() % 3), 1 + 2 * (rng() % 3), 2 + rng() % 6, 0, 0};
    std::vector<u64> units;
    for (u64 r = 1; r < g.g; ++r)
      if (std::gcd(r, g.g) == 1) units.push_back(r);
    g.i = units[rng() % units.size()];
    g.j = units[rng() % units.size()];
    g = validate_gamma(g);
    const u64 n = rng() % 3000, P = rng() % 10, X = 100 + rng() % 2900;
    const RepRecord r = rep_direct(t, n, g, P, X, false);
    const Brute b = brute(n, g, P, X);
    CHECK(r.count == b.count);
    CHECK(r.weighted == doctest::Approx(b.weighted).epsilon(1e-12));
  }
}

TEST_CASE("rep_table agrees with rep_direct, both convolution paths") {
  const PrimeTable t = sieve_primes(4000);
  for (const GammaParams& g : {validate_gamma({1, 1, 2, 1, 1}), validate_gamma({3, 5, 4, 1, 3}),
                               validate_gamma({1, 3, 5, 2, 4})}) {
    for (u64 threshold : {u64{0}, kDirectConvolutionThreshold}) {
      RepTableOptions opts;
      opts.direct_threshold = threshold;
      const RepTable tab = rep_table(t, g, 2, 1000, RepMode::Both, opts);
      REQUIRE(tab.weighted);
      const ClassPrimes first = primes_in_class(t, g.g, g.i, 2, 1000);
      for (u64 n = 0; n <= tab.max_target(); n += 7) {
        const RepRecord r = rep_direct(first, t, n, g, RepQuery{false, false});
        CHECK(tab.counts[n] == r.count);
        CHECK(std::abs((*tab.weighted)[static_cast<Eigen::Index>(n)] - r.weighted) <= tab.weighted_err);
      }
      CHECK(validate_weighted(tab, t, 50) <= tab.weighted_err);
    }
  }
}

TEST_CASE("array budget") {
  const PrimeTable t = sieve_primes(1000);
  RepTableOptions opts;
  opts.array_budget = 100;
  CHECK_THROWS_AS(rep_table(t, validate_gamma({1, 1, 2, 1, 1}), 1, 1000, RepMode::Exact, opts), Error);
}

TEST_CASE("lattice_count examples and brute force") {
  const GammaParams g = validate_gamma({1, 1, 2, 1, 1});
  CHECK(lattice_count(100, g, 0, 100) == 50);
  CHECK(lattice_count(7, g, 0, 7) == 0);
  CHECK(lattice_count(60, validate_gamma({3, 1, 2, 1, 1}), 0, 60) == 10);
  for (const GammaParams& h : {validate_gamma({3, 5, 7, 2, 4}), validate_gamma({1, 3, 4, 1, 3})}) {
    for (i64 n = 0; n <= 400; ++n) {
      u64 want = 0;
      for (i64 k = 3; k <= 50; ++k) {
        if (mod_floor(k, static_cast<i64>(h.g)) != static_cast<i64>(h.i)) continue;
        const i64 rest = n - static_cast<i64>(h.A) * k;
        if (rest <= 0 || rest % static_cast<i64>(h.B)) continue;
        const i64 l = rest / static_cast<i64>(h.B);
        if (l > 2 && l <= 50 && mod_floor(l, static_cast<i64>(h.g)) == static_cast<i64>(h.j)) ++want;
      }
      CHECK(lattice_count(n, h, 2, 50) == want);
    }
  }
}

TEST_CASE("goldbach scans") {
  ScanConfig cfg;
  cfg.N = 10;
  const auto f = Polynomial::parse("1,0");
  const GammaParams g = validate_gamma({1, 1, 2, 1, 1});
  CHECK(exceptional_scan(f, g, cfg).exceptional == std::vector<u64>{1, 2});
  cfg.N = 10'000;
  for (ScanStrategy s : {ScanStrategy::Direct, ScanStrategy::Table}) {
    ScanOptions opts;
    opts.strategy = s;
    opts.prediction_samples = 8;
    const ScanReport r = exceptional_scan(f, g, cfg, opts);
    CHECK(r.exceptional == std::vector<u64>{1, 2});
    CHECK(r.exceptional_targets == std::vector<std::string>{"2", "4"});
    CHECK(r.eligible_total == 10'000);
    REQUIRE(r.prediction);
    CHECK(r.prediction->rows.size() == 8);
    CHECK(r.prediction->expected_ratio == doctest::Approx(4.0));
  }
}

TEST_CASE("unsolvable parameters give an empty domain") {
  ScanConfig cfg;
  cfg.N = 100;
  const ScanReport r = exceptional_scan(Polynomial::parse("1,0,1"), validate_gamma({1, 1, 3, 1, 2}), cfg);
  CHECK_FALSE(r.local.solvable);
  CHECK(r.eligible_total == 0);
  CHECK(r.exceptional.empty());
}

TEST_CASE("prediction_row conventions") {
  RepRecord zero;
  CHECK(*prediction_row(7, 14, zero, 0.0).ratio == 1.0);
  CHECK(prediction_row(7, 14, zero, 0.0).degenerate);
  CHECK(*prediction_row(8, 16, zero, 3.0).ratio == 0.0);
  RepRecord some;
  some.count = 2;
  some.weighted = 4.0;
  CHECK_FALSE(prediction_row(8, 16, some, 0.0).ratio.has_value());
  CHECK(*prediction_row(8, 16, some, 2.0).ratio == 2.0);
}
