#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gblab/arith.hpp"
#include "gblab/convolution.hpp"
#include "gblab/sieve.hpp"

namespace gblab {

using PrimePair = std::pair<u64, u64>;

/// Representations n = A p1 + B p2 with P < p1, p2 <= X, p1 == i and
/// p2 == j (mod g). count is over ordered pairs; weighted is
/// sum log p1 log p2 (double precision, a few ulps per term).
struct RepRecord {
  u64 n = 0;
  u64 count = 0;
  double weighted = 0.0;
  std::optional<PrimePair> witness;  // lexicographically smallest pair
  u64 diagonal = 0;                  // pairs with p1 == p2

  /// Pairs {p1, p2} counted once; only meaningful when A == B and i == j.
  u64 unordered() const noexcept { return (count + diagonal) / 2; }
};

struct RepQuery {
  bool want_witness = true;
  bool existence_only = false;  // stop after the first pair
};

/// Direct enumeration over p1 in `first` (the class-i primes in (P, X]).
RepRecord rep_direct(const ClassPrimes& first, const PrimeTable& table, u64 n, const GammaParams& gamma,
                     RepQuery query = {});

/// Convenience overload that builds the class list itself. Throws
/// BoundsExceeded when the primes needed for n exceed the table.
RepRecord rep_direct(const PrimeTable& table, u64 n, const GammaParams& gamma, u64 P, u64 X,
                     bool want_witness = true);

enum class RepMode { Exact, Weighted, Both };

struct RepTableOptions {
  u64 array_budget = u64{1} << 26;  // max entries in the target array
  std::size_t direct_threshold = kDirectConvolutionThreshold;
};

/// r(n) for every target 0 <= n <= (A + B) X in one convolution.
///
/// counts come from an exact integer convolution (direct or two-prime NTT).
/// weighted comes from a floating FFT; weighted_err bounds the absolute
/// error of every entry by c * L * (log X)^2 * eps with L the transform
/// length and c = 2 ceil(log2 L) + 4.
struct RepTable {
  GammaParams gamma;
  u64 P = 0;
  u64 X = 0;
  std::vector<u64> counts;
  std::optional<Eigen::VectorXd> weighted;
  double weighted_err = 0.0;

  u64 max_target() const noexcept { return (gamma.A + gamma.B) * X; }
};

/// Throws ArrayBudgetExceeded when (A + B) X + 1 > opts.array_budget.
RepTable rep_table(const PrimeTable& table, const GammaParams& gamma, u64 P, u64 X, RepMode mode,
                   const RepTableOptions& opts = {});

/// Max |weighted[n] - rep_direct(n).weighted| over `samples` random targets
/// (fixed seed). Used to confirm weighted_err a posteriori.
double validate_weighted(const RepTable& t, const PrimeTable& table, int samples, u64 seed = 0x5eed);

/// Integer pairs (k, l) with P < k, l <= X, k == i, l == j (mod g) and
/// A k + B l = n. Closed-form count over the admissible residues of k
/// modulo g B.
u64 lattice_count(i64 n, const GammaParams& gamma, i64 P, i64 X);

enum class ScanStrategy { Auto, Direct, Table };

struct ScanOptions {
  ScanStrategy strategy = ScanStrategy::Auto;
  u64 array_budget = u64{1} << 24;  // Auto uses the table below this size
  std::size_t prediction_samples = 16;
  SieveOptions sieve;
};

struct DecadeBucket {
  u64 lo = 1;
  u64 hi = 9;
  u64 eligible = 0;
  u64 exceptional = 0;
  double density() const noexcept {
    return eligible == 0 ? 0.0 : static_cast<double>(exceptional) / static_cast<double>(eligible);
  }
};

struct PredictionRow {
  u64 n = 0;
  u64 target = 0;
  u64 count = 0;
  u64 unordered = 0;
  double weighted = 0.0;
  double main_term = 0.0;
  std::optional<double> ratio;  // weighted / main_term; empty when undefined
  bool degenerate = false;      // main_term == 0
};

struct PredictionSummary {
  std::vector<PredictionRow> rows;
  std::optional<double> median_ratio;
  double expected_ratio = 1.0;  // (g / phi(g))^2
  bool deviation_flag = false;  // median outside [0.8, 1.2] * expected_ratio
};

/// Exceptional set E(N, f) for the configured window.
struct ScanReport {
  Polynomial f;
  GammaParams gamma;
  ScanConfig config;
  ScanBounds bounds;
  LocalSolvability local;
  ScanStrategy strategy_used = ScanStrategy::Direct;
  u64 prime_limit = 0;                  // sieve limit actually used
  std::vector<u64> eligible;            // eligible n, ascending
  u64 eligible_total = 0;
  std::vector<u64> exceptional;         // ascending
  std::vector<std::string> exceptional_targets;  // 2 f(n) for each exceptional n
  u64 structurally_excluded = 0;        // n dropped because gcd(A,B) !| 2 f(n)
  u64 structurally_small = 0;           // eligible n with 2 f(n) < 2 (A + B)
  double density = 0.0;
  std::vector<DecadeBucket> buckets;
  std::optional<PredictionSummary> prediction;
};

/// Decides representability of every eligible 2 f(n) exactly. Integer data
/// only; weights are never consulted.
ScanReport exceptional_scan(const Polynomial& f, const GammaParams& gamma, const ScanConfig& cfg,
                            const ScanOptions& opts = {});

/// Same, with a caller-provided prime table that must reach max 2 f(n).
ScanReport exceptional_scan(const Polynomial& f, const GammaParams& gamma, const ScanConfig& cfg,
                            const PrimeTable& table, const ScanOptions& opts = {});

/// Joins exact counts for each sampled n with the predicted main term
/// S(2f(n)) 2f(n) / (g^2 A B). Reporting only.
PredictionSummary prediction_ratios(const ScanReport& report, std::span<const u64> sample, const PrimeTable& table);

/// Row for one target; ratio conventions: count 0 and main 0 -> 1
/// (degenerate), count 0 -> 0.
PredictionRow prediction_row(u64 n, u64 target, const RepRecord& rec, double main);

}  // namespace gblab
