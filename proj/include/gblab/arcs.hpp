#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "gblab/arith.hpp"
#include "gblab/sieve.hpp"

namespace gblab {

using Complex = std::complex<double>;

/// Exact rational num/den with den > 0, kept in lowest terms.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  Rational() = default;
  Rational(i64 n, i64 d);

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 l = static_cast<i128>(a.num) * b.den;
    const i128 r = static_cast<i128>(b.num) * a.den;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// e(x) = exp(2 pi i x) for x already reduced to [0, 1).
inline Complex unit_phase(double x) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

/// sum over the class of log p * e(C alpha p); the phase C alpha p is
/// reduced mod 1 exactly before the trigonometric call.
Complex exp_sum_S(const ClassPrimes& cp, u64 C, const Rational& alpha);
/// Real-argument variant; each phase is reduced mod 1 in double precision.
Complex exp_sum_S(const ClassPrimes& cp, u64 C, double alpha);

/// sum_{P < n <= X, n == i (mod g)} e(C eta n) by the closed geometric form.
Complex exp_sum_T(u64 g, u64 i, u64 P, u64 X, u64 C, double eta);

struct MajorArc {
  u64 q = 1;
  u64 a = 0;
  Rational center;
  Rational half_width;  // P / (q X)
};

struct ArcClass {
  bool major = false;
  u64 q = 0;  // the arc's q, a when major
  u64 a = 0;
};

/// The dissection into major arcs M(q, a), 0 <= a <= q <= P, gcd(a, q) = 1,
/// and the complementary minor arcs. The q = 1 arcs at 0 and 1 are two
/// half-arcs inside [0, 1].
class ArcDecomposition {
 public:
  /// Throws ArcsOverlap unless X > 2 P^3.
  ArcDecomposition(u64 X, u64 P);

  u64 X() const noexcept { return X_; }
  u64 P() const noexcept { return P_; }
  double Q() const noexcept { return static_cast<double>(X_) / static_cast<double>(P_); }
  const std::vector<MajorArc>& arcs() const noexcept { return arcs_; }

  /// Lebesgue measure of the major arcs inside [0, 1], exactly.
  mpq_class major_measure() const;

  /// Major-arc membership via the continued-fraction convergents of alpha
  /// with denominator <= P. alpha must lie in [0, 1].
  ArcClass classify(const Rational& alpha) const;

 private:
  u64 X_;
  u64 P_;
  std::vector<MajorArc> arcs_;
};

ArcDecomposition build_arcs(const Polynomial& f, const ScanConfig& cfg);

/// Continued-fraction convergents of num/den (den > 0), in order.
std::vector<Rational> convergents(const Rational& alpha);

/// The last convergent a/q of alpha with q <= max_q; then
/// |alpha - a/q| <= 1/q^2.
Rational dirichlet_approximation(const Rational& alpha, u64 max_q);

enum class Region { Full, Major, Minor };
std::string to_string(Region r);

struct QuadratureResult {
  Complex value;
  u64 M = 0;
  bool exact = true;   // M above the bandwidth bound for the full region
  std::string warning;
};

/// (1/M) sum_{t < M} S_i(A t/M) S_j(B t/M) e(-t n / M), optionally
/// restricted to grid points classified major or minor. For the full
/// region with M >= (A + B) X + n + 1 this equals the weighted count of
/// representations of n exactly (up to rounding); the flag uses the tighter
/// max((A+B)X - n, n - (A+B)(P+1)) + 1. A smaller M yields an estimate with
/// exact = false and a ResolutionTooLow warning.
QuadratureResult quadrature_r(const PrimeTable& table, u64 n, const GammaParams& gamma, u64 P, u64 X, Region region,
                              u64 M);

/// Major, minor and full values from one pass over the grid.
struct QuadratureSplit {
  Complex major;
  Complex minor;
  Complex full;
  double scale = 0.0;  // (1/M) sum |integrand|, for relative comparisons
};
QuadratureSplit quadrature_split(const PrimeTable& table, u64 n, const GammaParams& gamma, u64 P, u64 X, u64 M);

/// Minimum grid size for an exact full-region quadrature.
inline u64 quadrature_exact_M(u64 n, const GammaParams& gamma, u64 X) { return (gamma.A + gamma.B) * X + n + 1; }

/// (x^{4/5} + x q^{-1/2} + x^{1/2} q^{1/2}) (log x)^3.
double minor_envelope(double x, double q);

struct ArcSampleRow {
  Rational alpha;
  bool major = false;
  u64 q = 0;  // major: the arc; minor: Dirichlet approximant with q <= X/P
  u64 a = 0;
  Complex S_i;  // S_i(A alpha)
  Complex S_j;  // S_j(B alpha)
  double envelope = 0.0;
  double ratio = 0.0;  // |S_i| / envelope
};

struct DiagnosticOptions {
  int samples = 1000;
  u64 seed = 0x9e3779b97f4a7c15ULL;
  u64 grid = u64{1} << 32;  // alpha = t / grid
  bool minor_only = true;
};

/// Samples points of [0, 1) (only minor-arc points when minor_only) and
/// compares |S_i(A alpha)| with minor_envelope(X, q).
std::vector<ArcSampleRow> minor_bound_diagnostic(const PrimeTable& table, const GammaParams& gamma,
                                                 const ArcDecomposition& arcs, const DiagnosticOptions& opts = {});

}  // namespace gblab
