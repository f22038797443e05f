#include "gblab/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "gblab/arcs.hpp"
#include "gblab/error.hpp"
#include "gblab/repcount.hpp"
#include "gblab/sieve.hpp"
#include "gblab/singular.hpp"

namespace gblab {

namespace {

bool trial_division_prime(u64 m) {
  if (m < 2) return false;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

// Valid random Gamma with A, B in {1,3,5} and g from the given list.
GammaParams random_gamma(std::mt19937_64& rng, std::initializer_list<u64> gs) {
  static constexpr u64 kCoeffs[] = {1, 3, 5};
  const std::vector<u64> g_list(gs);
  GammaParams gamma;
  gamma.A = kCoeffs[rng() % 3];
  gamma.B = kCoeffs[rng() % 3];
  gamma.g = g_list[rng() % g_list.size()];
  std::vector<u64> units;
  for (u64 r = 1; r < gamma.g; ++r)
    if (std::gcd(r, gamma.g) == 1) units.push_back(r);
  gamma.i = units[rng() % units.size()];
  gamma.j = units[rng() % units.size()];
  return validate_gamma(gamma);
}

CheckResult check_sieve(u64 limit) {
  const PrimeTable t = sieve_primes(limit, SieveOptions{1 << 12});
  u64 count = 0;
  for (u64 m = 0; m <= limit; ++m) {
    const bool p = trial_division_prime(m);
    count += p;
    if (p != t.is_prime(m)) return {"sieve_vs_trial_division", false, "mismatch at " + std::to_string(m)};
  }
  if (count != t.prime_count()) return {"sieve_vs_trial_division", false, "prime_count mismatch"};
  return {"sieve_vs_trial_division", true, "limit " + std::to_string(limit)};
}

CheckResult check_table_vs_direct(int configs, u64 max_target) {
  std::mt19937_64 rng(20240601);
  const PrimeTable table = sieve_primes(max_target);
  for (int c = 0; c < configs; ++c) {
    const GammaParams gamma = random_gamma(rng, {2, 3, 4, 5, 8});
    const u64 X = max_target / std::min(gamma.A, gamma.B);
    RepTableOptions opts;
    opts.direct_threshold = c % 2 == 0 ? 0 : kDirectConvolutionThreshold;  // exercise both paths
    const RepTable t = rep_table(table, gamma, 1, std::min(X, table.limit()), RepMode::Both, opts);
    const ClassPrimes first = primes_in_class(table, gamma.g, gamma.i, 1, t.X);
    for (u64 n = 0; n <= max_target; ++n) {
      const RepRecord rec = rep_direct(first, table, n, gamma, RepQuery{false, false});
      if (rec.count != t.counts[n]) {
        return {"rep_table_vs_rep_direct", false, "config " + std::to_string(c) + " n=" + std::to_string(n)};
      }
    }
    const double dev = validate_weighted(t, table, 100, 7 + static_cast<u64>(c));
    if (dev > t.weighted_err) {
      return {"rep_table_vs_rep_direct", false, "weighted deviation above declared bound"};
    }
  }
  return {"rep_table_vs_rep_direct", true, std::to_string(configs) + " configs, targets <= " + std::to_string(max_target)};
}

CheckResult check_quadrature(int cases, u64 max_n) {
  std::mt19937_64 rng(424242);
  const PrimeTable table = sieve_primes(std::max<u64>(max_n, 2));
  double worst = 0.0;
  for (int c = 0; c < cases; ++c) {
    const GammaParams gamma = random_gamma(rng, {2, 3, 4, 5});
    const u64 n = 1 + rng() % max_n;
    const u64 X = std::max<u64>(n, 2);
    const RepRecord rec = rep_direct(table, n, gamma, 1, X, false);
    const QuadratureResult q =
        quadrature_r(table, n, gamma, 1, X, Region::Full, quadrature_exact_M(n, gamma, X));
    const double err = std::abs(q.value - Complex(rec.weighted, 0.0)) / std::max(1.0, rec.weighted);
    worst = std::max(worst, err);
    if (err > 1e-6) return {"quadrature_vs_counting", false, "n=" + std::to_string(n)};
  }
  std::ostringstream d;
  d << cases << " cases, worst relative error " << worst;
  return {"quadrature_vs_counting", true, d.str()};
}

CheckResult check_singular(u64 multiplicativity_q, int agreement_samples) {
  for (u64 n : {1ULL, 3ULL, 15ULL, 1001ULL}) {
    if (singular_series(n).value != 0.0) return {"singular_series", false, "odd n nonzero"};
  }
  if (singular_series(12).value != singular_series(6).value) return {"singular_series", false, "S(12) != S(6)"};
  const double s2 = singular_series(2).value;
  for (u64 a = 2; a < 40; ++a)
    if (singular_series(u64{1} << a).value != s2) return {"singular_series", false, "S(2^a) varies"};
  for (u64 q1 = 1; q1 <= multiplicativity_q; ++q1)
    for (u64 q2 = 1; q2 <= multiplicativity_q; ++q2) {
      if (std::gcd(q1, q2) != 1) continue;
      for (i64 m = 0; m <= 50; ++m)
        if (ramanujan_sum(q1 * q2, m) != ramanujan_sum(q1, m) * ramanujan_sum(q2, m))
          return {"singular_series", false, "c_q not multiplicative"};
    }
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int s = 0; s < agreement_samples; ++s) {
    const u64 n = 2 * (1 + rng() % 5000);
    const double part = singular_series(n, SingularMethod::PartialSum, kDefaultPartialTruncation).value;
    const double prod = singular_series(n, SingularMethod::EulerProduct, kDefaultEulerTruncation).value;
    worst = std::max(worst, std::abs(part - prod));
  }
  if (worst > 5e-3) return {"singular_series", false, "partial sum vs product gap " + std::to_string(worst)};
  return {"singular_series", true, "worst sum/product gap " + std::to_string(worst)};
}

CheckResult check_lattice(u64 max_n) {
  const std::vector<GammaParams> configs = {
      validate_gamma({1, 1, 2, 1, 1}), validate_gamma({1, 3, 4, 1, 3}), validate_gamma({3, 5, 7, 2, 4})};
  for (const GammaParams& gamma : configs) {
    const double tol = 2.0 * static_cast<double>(gamma.A + gamma.B + gamma.g);
    for (u64 n = 1; n <= max_n; ++n) {
      if (n % gamma.g != gamma.class_sum()) continue;
      const double main = static_cast<double>(n) / static_cast<double>(gamma.g * gamma.A * gamma.B);
      const double c = static_cast<double>(lattice_count(static_cast<i64>(n), gamma, 0, static_cast<i64>(n)));
      if (std::abs(c - main) > tol) return {"lattice_main_term", false, "n=" + std::to_string(n)};
    }
  }
  return {"lattice_main_term", true, "n <= " + std::to_string(max_n)};
}

CheckResult check_goldbach(u64 N) {
  ScanConfig cfg;
  cfg.N = N;
  ScanOptions opts;
  opts.prediction_samples = 0;
  const ScanReport r = exceptional_scan(Polynomial::parse("1,0"), validate_gamma({1, 1, 2, 1, 1}), cfg, opts);
  const bool ok = r.exceptional == std::vector<u64>{1, 2};
  return {"goldbach_regression", ok, "N=" + std::to_string(N) + ", |E|=" + std::to_string(r.exceptional.size())};
}

CheckResult check_minor(u64 X) {
  const PrimeTable table = sieve_primes(X);
  const GammaParams gamma = validate_gamma({1, 1, 4, 1, 1});
  ScanConfig cfg;
  cfg.N = X / 2;
  cfg.cutoff = CutoffMode::Paper;
  const ArcDecomposition arcs = build_arcs(Polynomial::parse("1,0"), cfg);
  DiagnosticOptions opts;
  opts.samples = 200;
  const auto rows = minor_bound_diagnostic(table, gamma, arcs, opts);
  const double theta = chebyshev_theta(primes_in_class(table, 4, 1, arcs.P(), X));
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, std::abs(row.S_i));
  const bool ok = !rows.empty() && worst <= 0.5 * theta;
  std::ostringstream d;
  d << "max |S|/theta = " << worst / theta;
  return {"minor_arc_safety", ok, d.str()};
}

}  // namespace

std::vector<CheckResult> run_selftest(SelftestLevel level) {
  const bool full = level == SelftestLevel::Full;
  std::vector<std::function<CheckResult()>> checks = {
      [&] { return check_sieve(full ? 100'000 : 10'000); },
      [&] { return check_table_vs_direct(full ? 20 : 4, full ? 20'000 : 2'000); },
      [&] { return check_quadrature(full ? 100 : 10, full ? 2000 : 300); },
      [&] { return check_singular(full ? 100 : 30, full ? 100 : 5); },
      [&] { return check_lattice(full ? 100'000 : 10'000); },
      [&] { return check_goldbach(full ? 100'000 : 10'000); },
      [&] { return check_minor(full ? 100'000 : 20'000); },
  };
  std::vector<CheckResult> out;
  for (auto& check : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {"exception", false, e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gblab
