#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gblab/numeric.hpp"

namespace gblab {

/// Integer polynomial with positive leading coefficient. coeffs[d] is the
/// coefficient of x^d.
class Polynomial {
 public:
  /// Throws InvalidPolynomial unless degree >= 1 and the leading coefficient
  /// is positive.
  explicit Polynomial(std::vector<mpz_class> coeffs_low_to_high);

  /// Parses "c_k,...,c_1,c_0" (leading coefficient first).
  static Polynomial parse(std::string_view text);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

  /// "c_k,...,c_0", the inverse of parse().
  std::string to_string() const;

 private:
  std::vector<mpz_class> coeffs_;
};

/// Exact Horner evaluation.
mpz_class poly_eval(const Polynomial& f, const mpz_class& n);
inline mpz_class poly_eval(const Polynomial& f, i64 n) { return poly_eval(f, mpz_class(static_cast<long>(n))); }

/// 2 f(n), the representation target.
inline mpz_class target(const Polynomial& f, u64 n) {
  return 2 * poly_eval(f, mpz_class(static_cast<unsigned long>(n)));
}

/// The parameter tuple {A, B, g, i, j}.
struct GammaParams {
  u64 A = 1;
  u64 B = 1;
  u64 g = 2;
  u64 i = 1;
  u64 j = 1;

  // Filled in by validate_gamma.
  bool validated = false;
  u64 ab_gcd = 1;
  bool ab_gcd_warning = false;

  /// A*i + B*j mod g.
  u64 class_sum() const noexcept;
};

/// Checks parity of A, B, the ranges 0 < i, j < g and coprimality with g.
/// gcd(A, B) > 1 is accepted but flagged.
GammaParams validate_gamma(GammaParams gamma);

struct LocalSolvability {
  bool solvable = false;
  std::vector<u64> witnesses;  // residues m in [0, g)
};

/// Exhaustive search for m mod g with 2 f(m) == A i + B j (mod g).
LocalSolvability local_solvable(const Polynomial& f, const GammaParams& gamma);

enum class CutoffMode { Paper, Full };

/// Non-negative rational used for delta.
struct Ratio {
  u64 num = 1;
  u64 den = 60;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parses "a/b" or a plain decimal such as "0.02" into an exact ratio.
Ratio parse_ratio(std::string_view text);

struct ScanConfig {
  u64 N = 1;
  std::optional<Ratio> delta;      // paper mode only; default 1/60 (capped for high degree)
  std::optional<u64> P_override;   // wins over delta
  CutoffMode cutoff = CutoffMode::Full;
  bool kappa_window = false;
  bool keep_gcd_obstructed = false;  // disables the gcd(A,B) | 2f(n) filter
  unsigned threads = 1;
};

/// Quantities derived from (f, cfg).
struct ScanBounds {
  mpz_class X;         // 2 f(N)
  u64 P = 1;           // prime cutoff: primes p > P are used
  double Q = 0.0;      // X / P
  double kappa = 0.5;  // 2^(-1/k)
  Ratio delta;         // the delta actually used
  u64 n_lo = 1;        // window is [n_lo, n_hi]
  u64 n_hi = 1;
};

/// Default delta: 1/60 (P ~ X^0.1), shrunk to 1/(30k) when 1/60 is not
/// below 1/(24k).
Ratio default_delta(int degree);

/// Throws InvalidConfig when N = 0, X <= 0, delta outside (0, 1/(24k)) or
/// the paper-mode P would be < 2.
ScanBounds derive_bounds(const Polynomial& f, const ScanConfig& cfg);

struct Eligibility {
  std::vector<u64> n;       // ascending
  u64 gcd_obstructed = 0;   // dropped because gcd(A,B) does not divide 2f(n)
  u64 nonpositive = 0;      // dropped because 2f(n) <= 0
};

/// All n in the configured window with 2 f(n) == A i + B j (mod g) and
/// 2 f(n) > 0.
Eligibility eligible_n(const Polynomial& f, const GammaParams& gamma, const ScanConfig& cfg);

}  // namespace gblab
