#include "gblab/repcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "gblab/error.hpp"
#include "gblab/singular.hpp"

namespace gblab {

RepRecord rep_direct(const ClassPrimes& first, const PrimeTable& table, u64 n, const GammaParams& gamma,
                     RepQuery query) {
  if (first.X > table.limit()) {
    throw Error(ErrorCode::BoundsExceeded, "class bound " + std::to_string(first.X) + " exceeds sieve limit " +
                                               std::to_string(table.limit()));
  }
  RepRecord rec;
  rec.n = n;
  const u64 A = gamma.A, B = gamma.B, g = gamma.g, j = gamma.j % gamma.g;
  const u64 P = first.P, X = first.X;
  const u64 p2_min = std::max<u64>(P + 1, 2);
  if (static_cast<u128>(B) * p2_min > n) return rec;
  const u64 p1_cap = (n - B * p2_min) / A;
  CompensatedSum weighted;
  for (std::size_t t = 0; t < first.primes.size(); ++t) {
    const u64 p1 = first.primes[t];
    if (p1 > p1_cap) break;
    const u64 rem = n - A * p1;
    if (rem % B != 0) continue;
    const u64 p2 = rem / B;
    if (p2 <= P || p2 > X || p2 % g != j || !table.is_prime(p2)) continue;
    ++rec.count;
    if (p1 == p2) ++rec.diagonal;
    weighted += first.logs[t] * std::log(static_cast<double>(p2));
    if (!rec.witness && query.want_witness) rec.witness = PrimePair{p1, p2};
    if (query.existence_only) break;
  }
  rec.weighted = weighted.value();
  return rec;
}

RepRecord rep_direct(const PrimeTable& table, u64 n, const GammaParams& gamma, u64 P, u64 X, bool want_witness) {
  // Largest prime that can take part: A p1 + B * 2 <= n or A * 2 + B p2 <= n.
  const u64 p1_max = n >= 2 * gamma.B ? (n - 2 * gamma.B) / gamma.A : 0;
  const u64 p2_max = n >= 2 * gamma.A ? (n - 2 * gamma.A) / gamma.B : 0;
  const u64 needed = std::min(X, std::max({p1_max, p2_max, u64{2}}));
  if (needed > table.limit()) {
    throw Error(ErrorCode::BoundsExceeded, "n=" + std::to_string(n) + " needs primes up to " +
                                               std::to_string(needed) + " but the sieve stops at " +
                                               std::to_string(table.limit()));
  }
  const ClassPrimes first = primes_in_class(table, gamma.g, gamma.i, P, needed);
  return rep_direct(first, table, n, gamma, RepQuery{want_witness, false});
}

RepTable rep_table(const PrimeTable& table, const GammaParams& gamma, u64 P, u64 X, RepMode mode,
                   const RepTableOptions& opts) {
  const u128 len = static_cast<u128>(gamma.A + gamma.B) * X + 1;
  if (len > opts.array_budget) {
    throw Error(ErrorCode::ArrayBudgetExceeded, "target array of " + std::to_string(static_cast<u64>(len)) +
                                                    " entries exceeds budget " + std::to_string(opts.array_budget));
  }
  const ClassPrimes ci = primes_in_class(table, gamma.g, gamma.i, P, X);
  const ClassPrimes cj = primes_in_class(table, gamma.g, gamma.j, P, X);
  RepTable out;
  out.gamma = gamma;
  out.P = P;
  out.X = X;
  const std::size_t la = gamma.A * X + 1;
  const std::size_t lb = gamma.B * X + 1;

  if (mode != RepMode::Weighted) {
    std::vector<u64> a(la, 0), b(lb, 0);
    for (u64 p : ci.primes) a[gamma.A * p] = 1;
    for (u64 p : cj.primes) b[gamma.B * p] = 1;
    out.counts = convolve_exact(a, b, opts.direct_threshold);
    out.counts.resize(static_cast<std::size_t>(len), 0);
  }
  if (mode != RepMode::Exact) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(la));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lb));
    for (std::size_t t = 0; t < ci.size(); ++t) a(static_cast<Eigen::Index>(gamma.A * ci.primes[t])) = ci.logs[t];
    for (std::size_t t = 0; t < cj.size(); ++t) b(static_cast<Eigen::Index>(gamma.B * cj.primes[t])) = cj.logs[t];
    Eigen::VectorXd w = convolve_real(a, b);
    w.conservativeResize(static_cast<Eigen::Index>(len));
    out.weighted = std::move(w);
    double L = 1.0;
    int log2L = 0;
    while (L < static_cast<double>(la + lb - 1)) {
      L *= 2.0;
      ++log2L;
    }
    const double max_entry = std::log(static_cast<double>(std::max<u64>(X, 2)));
    const double c = 2.0 * log2L + 4.0;
    out.weighted_err = c * L * max_entry * max_entry * std::numeric_limits<double>::epsilon();
  }
  return out;
}

double validate_weighted(const RepTable& t, const PrimeTable& table, int samples, u64 seed) {
  if (!t.weighted) return 0.0;
  std::mt19937_64 rng(seed);
  const ClassPrimes first = primes_in_class(table, t.gamma.g, t.gamma.i, t.P, t.X);
  double worst = 0.0;
  const u64 top = t.max_target();
  for (int s = 0; s < samples; ++s) {
    const u64 n = rng() % (top + 1);
    const RepRecord rec = rep_direct(first, table, n, t.gamma, RepQuery{false, false});
    worst = std::max(worst, std::abs((*t.weighted)(static_cast<Eigen::Index>(n)) - rec.weighted));
  }
  return worst;
}

namespace {

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

}  // namespace

u64 lattice_count(i64 n, const GammaParams& gamma, i64 P, i64 X) {
  const i128 A = gamma.A, B = gamma.B, g = gamma.g;
  const i128 i = gamma.i % gamma.g, j = gamma.j % gamma.g;
  // l = (n - A k) / B in (P, X]  <=>  k in [ceil((n - B X)/A), floor((n - B (P+1))/A)]
  const i128 lo = std::max<i128>(static_cast<i128>(P) + 1, ceil_div(static_cast<i128>(n) - B * X, A));
  const i128 hi = std::min<i128>(X, floor_div(static_cast<i128>(n) - B * (static_cast<i128>(P) + 1), A));
  if (hi < lo) return 0;
  const i128 period = g * B;
  i128 total = 0;
  for (i128 s = 0; s < B; ++s) {
    const i128 r = i + g * s;
    const i128 rem = static_cast<i128>(n) - A * r;
    if (rem % B != 0) continue;
    i128 l = rem / B;
    l %= g;
    if (l < 0) l += g;
    if (l != j) continue;
    total += floor_div(hi - r, period) - floor_div(lo - 1 - r, period);
  }
  return static_cast<u64>(total);
}

PredictionRow prediction_row(u64 n, u64 target, const RepRecord& rec, double main) {
  PredictionRow row;
  row.n = n;
  row.target = target;
  row.count = rec.count;
  row.unordered = rec.unordered();
  row.weighted = rec.weighted;
  row.main_term = main;
  if (main == 0.0) {
    row.degenerate = true;
    if (rec.count == 0) row.ratio = 1.0;
  } else {
    row.ratio = rec.count == 0 ? 0.0 : rec.weighted / main;
  }
  return row;
}

PredictionSummary prediction_ratios(const ScanReport& report, std::span<const u64> sample, const PrimeTable& table) {
  PredictionSummary out;
  const GammaParams& gamma = report.gamma;
  const double ratio_g = static_cast<double>(gamma.g) / static_cast<double>(euler_phi(gamma.g));
  out.expected_ratio = ratio_g * ratio_g;
  if (sample.empty()) return out;
  const u64 X = std::min(report.prime_limit, table.limit());
  const ClassPrimes first = primes_in_class(table, gamma.g, gamma.i, report.bounds.P, X);
  std::vector<double> ratios;
  for (u64 n : sample) {
    const mpz_class t = target(report.f, n);
    // every prime that can appear in a representation of t must be <= X
    const bool in_range = t > 0 && t.fits_ulong_p() && t.get_ui() / std::min(gamma.A, gamma.B) <= X;
    if (!in_range) {
      throw Error(ErrorCode::BoundsExceeded, "prediction target 2f(" + std::to_string(n) + ") outside prime data");
    }
    const u64 tv = t.get_ui();
    const RepRecord rec = rep_direct(first, table, tv, gamma, RepQuery{true, false});
    out.rows.push_back(prediction_row(n, tv, rec, main_term(tv, gamma)));
    if (!out.rows.back().degenerate && out.rows.back().ratio) ratios.push_back(*out.rows.back().ratio);
  }
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t m = ratios.size();
    out.median_ratio = m % 2 == 1 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
    out.deviation_flag =
        *out.median_ratio < 0.8 * out.expected_ratio || *out.median_ratio > 1.2 * out.expected_ratio;
  } else {
    out.deviation_flag = true;
  }
  return out;
}

namespace {

constexpr u64 kMaxTarget = u64{1} << 62;

struct Targets {
  std::vector<u64> values;
  u64 max = 0;
};

Targets compute_targets(const Polynomial& f, const std::vector<u64>& eligible) {
  Targets out;
  out.values.reserve(eligible.size());
  for (u64 n : eligible) {
    const mpz_class t = target(f, n);
    if (!t.fits_ulong_p() || t.get_ui() > kMaxTarget) {
      throw Error(ErrorCode::Overflow, "target 2f(" + std::to_string(n) + ") = " + t.get_str() +
                                           " exceeds the supported range");
    }
    out.values.push_back(t.get_ui());
    out.max = std::max(out.max, out.values.back());
  }
  return out;
}

std::vector<u64> prediction_sample(const std::vector<u64>& eligible, std::size_t want) {
  std::vector<u64> out;
  if (eligible.empty() || want == 0) return out;
  const std::size_t half = eligible.size() / 2;
  const std::size_t span = eligible.size() - 1 - half;
  const std::size_t k = std::min(want, span + 1);
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t idx = k == 1 ? eligible.size() - 1 : half + s * span / (k - 1);
    out.push_back(eligible[idx]);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<DecadeBucket> decade_buckets(const ScanBounds& b, const std::vector<u64>& eligible,
                                         const std::vector<u64>& exceptional) {
  std::vector<DecadeBucket> out;
  for (u64 lo = 1; lo <= b.n_hi; lo = lo > std::numeric_limits<u64>::max() / 10 ? b.n_hi + 1 : lo * 10) {
    const u64 hi = std::min(b.n_hi, lo * 10 - 1);
    if (hi < b.n_lo) continue;
    DecadeBucket d;
    d.lo = std::max(lo, b.n_lo);
    d.hi = hi;
    auto count_in = [&](const std::vector<u64>& v) {
      return static_cast<u64>(std::upper_bound(v.begin(), v.end(), d.hi) - std::lower_bound(v.begin(), v.end(), d.lo));
    };
    d.eligible = count_in(eligible);
    d.exceptional = count_in(exceptional);
    out.push_back(d);
    if (lo > b.n_hi / 10) break;
  }
  return out;
}

ScanReport empty_report(const Polynomial& f, const GammaParams& gamma, const ScanConfig& cfg) {
  return ScanReport{f, gamma, cfg, derive_bounds(f, cfg), local_solvable(f, gamma),
                    ScanStrategy::Direct, 0, {}, 0, {}, {}, 0, 0, 0.0, {}, std::nullopt};
}

ScanReport scan_impl(const Polynomial& f, const GammaParams& gamma_in, const ScanConfig& cfg,
                     const PrimeTable* given, const ScanOptions& opts) {
  const GammaParams gamma = gamma_in.validated ? gamma_in : validate_gamma(gamma_in);
  ScanReport report = empty_report(f, gamma, cfg);
  if (!report.local.solvable) {
    report.buckets = decade_buckets(report.bounds, {}, {});
    return report;
  }
  Eligibility elig = eligible_n(f, gamma, cfg);
  report.structurally_excluded = elig.gcd_obstructed;
  report.eligible = std::move(elig.n);
  report.eligible_total = report.eligible.size();
  const Targets targets = compute_targets(f, report.eligible);
  report.prime_limit = std::max<u64>(targets.max, 2);

  PrimeTable owned;
  const PrimeTable* table = given;
  if (table == nullptr) {
    owned = cached_sieve(report.prime_limit, opts.sieve);
    table = &owned;
  } else if (table->limit() < report.prime_limit) {
    throw Error(ErrorCode::BoundsExceeded, "prime table stops at " + std::to_string(table->limit()) +
                                               " but targets reach " + std::to_string(report.prime_limit));
  }
  const u64 P = report.bounds.P;
  const u64 X = report.prime_limit;

  const u128 table_len = static_cast<u128>(gamma.A + gamma.B) * X + 1;
  ScanStrategy strategy = opts.strategy;
  if (strategy == ScanStrategy::Auto) {
    const bool fits = table_len <= opts.array_budget;
    const bool dense = static_cast<u128>(report.eligible_total) * 64 >= table_len;
    strategy = fits && dense ? ScanStrategy::Table : ScanStrategy::Direct;
  }
  report.strategy_used = strategy;

  const std::size_t m = report.eligible.size();
  std::vector<char> representable(m, 0);
  if (strategy == ScanStrategy::Table) {
    RepTableOptions topt;
    topt.array_budget = std::max<u64>(opts.array_budget, static_cast<u64>(table_len));
    const RepTable t = rep_table(*table, gamma, P, X, RepMode::Exact, topt);
    for (std::size_t k = 0; k < m; ++k) representable[k] = t.counts[targets.values[k]] > 0;
  } else {
    const ClassPrimes first = primes_in_class(*table, gamma.g, gamma.i, P, X);
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const RepRecord rec = rep_direct(first, *table, targets.values[k], gamma, RepQuery{false, true});
        representable[k] = rec.count > 0;
      }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(std::max<std::size_t>(m, 1))));
    if (threads == 1) {
      work(0, m);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, m * t / threads, m * (t + 1) / threads);
    }
  }

  const u64 small = 2 * (gamma.A + gamma.B);
  for (std::size_t k = 0; k < m; ++k) {
    if (targets.values[k] < small) ++report.structurally_small;
    if (!representable[k]) {
      report.exceptional.push_back(report.eligible[k]);
      report.exceptional_targets.push_back(std::to_string(targets.values[k]));
    }
  }
  report.density =
      m == 0 ? 0.0 : static_cast<double>(report.exceptional.size()) / static_cast<double>(m);
  report.buckets = decade_buckets(report.bounds, report.eligible, report.exceptional);
  if (opts.prediction_samples > 0) {
    const auto sample = prediction_sample(report.eligible, opts.prediction_samples);
    report.prediction = prediction_ratios(report, sample, *table);
  }
  return report;
}

}  // namespace

ScanReport exceptional_scan(const Polynomial& f, const GammaParams& gamma, const ScanConfig& cfg,
                            const ScanOptions& opts) {
  return scan_impl(f, gamma, cfg, nullptr, opts);
}

ScanReport exceptional_scan(const Polynomial& f, const GammaParams& gamma, const ScanConfig& cfg,
                            const PrimeTable& table, const ScanOptions& opts) {
  return scan_impl(f, gamma, cfg, &table, opts);
}

}  // namespace gblab
