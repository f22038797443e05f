#include "gblab/arcs.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "gblab/error.hpp"

namespace gblab {

Rational::Rational(i64 n, i64 d) : num(n), den(d) {
  if (d == 0) throw Error(ErrorCode::InvalidConfig, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i64 gcd = std::gcd(num, den);
  if (gcd > 1) {
    num /= gcd;
    den /= gcd;
  }
}

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double frac(double x) { return x - std::floor(x); }

// (a * b) mod m for non-negative values.
u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

}  // namespace

Complex exp_sum_S(const ClassPrimes& cp, u64 C, const Rational& alpha) {
  const u64 den = static_cast<u64>(alpha.den);
  const u64 num = static_cast<u64>(mod_floor(alpha.num, alpha.den));
  const u64 cnum = mulmod(C % den, num, den);
  CompensatedSum re, im;
  for (std::size_t t = 0; t < cp.size(); ++t) {
    const u64 r = mulmod(cp.primes[t] % den, cnum, den);
    const Complex e = unit_phase(static_cast<double>(r) / static_cast<double>(den));
    re += cp.logs[t] * e.real();
    im += cp.logs[t] * e.imag();
  }
  return {re.value(), im.value()};
}

Complex exp_sum_S(const ClassPrimes& cp, u64 C, double alpha) {
  const double ca = frac(static_cast<double>(C) * frac(alpha));
  CompensatedSum re, im;
  for (std::size_t t = 0; t < cp.size(); ++t) {
    const Complex e = unit_phase(frac(ca * static_cast<double>(cp.primes[t])));
    re += cp.logs[t] * e.real();
    im += cp.logs[t] * e.imag();
  }
  return {re.value(), im.value()};
}

Complex exp_sum_T(u64 g, u64 i, u64 P, u64 X, u64 C, double eta) {
  const u64 n0 = P + 1 + static_cast<u64>(mod_floor(static_cast<i64>(i % g) - static_cast<i64>((P + 1) % g),
                                                    static_cast<i64>(g)));
  if (n0 > X) return {0.0, 0.0};
  const u64 count = (X - n0) / g + 1;
  const double step = static_cast<double>(C) * static_cast<double>(g) * eta;
  const double theta = step - std::nearbyint(step);  // in [-1/2, 1/2]
  Complex geometric;
  if (theta == 0.0) {
    geometric = static_cast<double>(count);
  } else {
    const double c = static_cast<double>(count);
    const double ratio = std::sin(kPi * c * theta) / std::sin(kPi * theta);
    geometric = unit_phase(frac((c - 1.0) * theta / 2.0)) * ratio;
  }
  const double start = frac(static_cast<double>(C) * eta * static_cast<double>(n0));
  return unit_phase(start) * geometric;
}

std::vector<Rational> convergents(const Rational& alpha) {
  std::vector<Rational> out;
  i128 h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  i128 num = alpha.num, den = alpha.den;
  while (den != 0) {
    i128 a = num / den;
    if (num % den != 0 && num < 0) --a;
    const i128 h = a * h_prev + h_prev2;
    const i128 k = a * k_prev + k_prev2;
    out.emplace_back(static_cast<i64>(h), static_cast<i64>(k));
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const i128 r = num - a * den;
    num = den;
    den = r;
  }
  return out;
}

Rational dirichlet_approximation(const Rational& alpha, u64 max_q) {
  const std::vector<Rational> cs = convergents(alpha);
  Rational best = cs.front();  // denominator 1
  for (const Rational& c : cs) {
    if (static_cast<u64>(c.den) > max_q) break;
    best = c;
  }
  return best;
}

ArcDecomposition::ArcDecomposition(u64 X, u64 P) : X_(X), P_(P) {
  if (P == 0) throw Error(ErrorCode::InvalidConfig, "arc cutoff P must be positive");
  if (static_cast<u128>(X) <= 2 * static_cast<u128>(P) * P * P) {
    throw Error(ErrorCode::ArcsOverlap, "need X > 2 P^3 for disjoint major arcs (X=" + std::to_string(X) +
                                            ", P=" + std::to_string(P) + ")");
  }
  if (X > (u64{1} << 62)) throw Error(ErrorCode::Overflow, "X too large for exact arc endpoints");
  for (u64 q = 1; q <= P; ++q) {
    for (u64 a = 0; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      MajorArc arc;
      arc.q = q;
      arc.a = a;
      arc.center = Rational(static_cast<i64>(a), static_cast<i64>(q));
      arc.half_width = Rational(static_cast<i64>(P), static_cast<i64>(q * X));
      arcs_.push_back(arc);
    }
  }
}

mpq_class ArcDecomposition::major_measure() const {
  mpq_class total = 0;
  for (const MajorArc& arc : arcs_) {
    mpq_class w(static_cast<long>(arc.half_width.num), static_cast<unsigned long>(arc.half_width.den));
    w.canonicalize();
    // the q = 1 arcs are clipped to [0, 1]
    total += arc.q == 1 ? w : 2 * w;
  }
  return total;
}

ArcClass ArcDecomposition::classify(const Rational& alpha) const {
  if (alpha.num < 0 || alpha.num > alpha.den) {
    throw Error(ErrorCode::InvalidConfig, "classify expects alpha in [0, 1], got " + alpha.to_string());
  }
  // Any a/q with q <= P and |alpha - a/q| <= P/(qX) < 1/(2q^2) is a
  // convergent of alpha.
  for (const Rational& c : convergents(alpha)) {
    if (static_cast<u64>(c.den) > P_) break;
    const i128 gap = static_cast<i128>(alpha.num) * c.den - static_cast<i128>(c.num) * alpha.den;
    const i128 dist = gap < 0 ? -gap : gap;
    if (dist * static_cast<i128>(X_) <= static_cast<i128>(P_) * alpha.den) {
      return ArcClass{true, static_cast<u64>(c.den), static_cast<u64>(c.num)};
    }
  }
  return ArcClass{};
}

ArcDecomposition build_arcs(const Polynomial& f, const ScanConfig& cfg) {
  const ScanBounds b = derive_bounds(f, cfg);
  if (!b.X.fits_ulong_p()) throw Error(ErrorCode::Overflow, "X = " + b.X.get_str() + " too large for arcs");
  return ArcDecomposition(b.X.get_ui(), b.P);
}

std::string to_string(Region r) {
  switch (r) {
    case Region::Full: return "full";
    case Region::Major: return "major";
    case Region::Minor: return "minor";
  }
  return "?";
}

namespace {

struct GridSums {
  std::vector<Complex> twiddle;  // e(k / M)
  std::vector<u64> step_i;       // A p mod M
  std::vector<u64> step_j;       // B p mod M
  ClassPrimes ci;
  ClassPrimes cj;
};

GridSums prepare_grid(const PrimeTable& table, const GammaParams& gamma, u64 P, u64 X, u64 M) {
  if (M == 0 || M >= (u64{1} << 32)) throw Error(ErrorCode::InvalidConfig, "grid size M must lie in [1, 2^32)");
  GridSums gs;
  gs.ci = primes_in_class(table, gamma.g, gamma.i, P, X);
  gs.cj = primes_in_class(table, gamma.g, gamma.j, P, X);
  gs.twiddle.resize(M);
  for (u64 k = 0; k < M; ++k) gs.twiddle[k] = unit_phase(static_cast<double>(k) / static_cast<double>(M));
  for (u64 p : gs.ci.primes) gs.step_i.push_back(mulmod(gamma.A % M, p % M, M));
  for (u64 p : gs.cj.primes) gs.step_j.push_back(mulmod(gamma.B % M, p % M, M));
  return gs;
}

Complex grid_sum(const GridSums& gs, const ClassPrimes& cp, const std::vector<u64>& steps, u64 t, u64 M) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const Complex& e = gs.twiddle[steps[k] * t % M];
    re += cp.logs[k] * e.real();
    im += cp.logs[k] * e.imag();
  }
  return {re, im};
}

// S_i(A t/M) S_j(B t/M) e(-t n / M)
Complex integrand(const GridSums& gs, u64 n, u64 t, u64 M) {
  const Complex si = grid_sum(gs, gs.ci, gs.step_i, t, M);
  const Complex sj = grid_sum(gs, gs.cj, gs.step_j, t, M);
  const u64 shift = (M - mulmod(n % M, t, M)) % M;
  return si * sj * gs.twiddle[shift];
}

}  // namespace

QuadratureSplit quadrature_split(const PrimeTable& table, u64 n, const GammaParams& gamma, u64 P, u64 X, u64 M) {
  const GridSums gs = prepare_grid(table, gamma, P, X, M);
  const ArcDecomposition arcs(X, std::max<u64>(P, 1));
  CompensatedSum maj_re, maj_im, min_re, min_im, scale;
  for (u64 t = 0; t < M; ++t) {
    const Complex v = integrand(gs, n, t, M);
    scale += std::abs(v);
    if (arcs.classify(Rational(static_cast<i64>(t), static_cast<i64>(M))).major) {
      maj_re += v.real();
      maj_im += v.imag();
    } else {
      min_re += v.real();
      min_im += v.imag();
    }
  }
  const double inv = 1.0 / static_cast<double>(M);
  QuadratureSplit out;
  out.major = Complex(maj_re.value(), maj_im.value()) * inv;
  out.minor = Complex(min_re.value(), min_im.value()) * inv;
  out.full = out.major + out.minor;
  out.scale = scale.value() * inv;
  return out;
}

QuadratureResult quadrature_r(const PrimeTable& table, u64 n, const GammaParams& gamma, u64 P, u64 X, Region region,
                              u64 M) {
  QuadratureResult out;
  out.M = M;
  // Sums A p1 + B p2 lie in [(A+B)(P+1), (A+B)X]; no other sum aliases onto
  // n modulo M once M exceeds the largest distance from n.
  const u64 lo = (gamma.A + gamma.B) * (P + 1), hi = (gamma.A + gamma.B) * X;
  const u64 need = std::max(hi > n ? hi - n : 0, n > lo ? n - lo : 0) + 1;
  if (region == Region::Full && M < need) {
    out.exact = false;
    out.warning = std::string(to_string(ErrorCode::ResolutionTooLow)) + ": M=" + std::to_string(M) +
                  " is below the exactness bound " + std::to_string(need) + "; value is an estimate";
  }
  const GridSums gs = prepare_grid(table, gamma, P, X, M);
  std::optional<ArcDecomposition> arcs;
  if (region != Region::Full) arcs.emplace(X, std::max<u64>(P, 1));
  CompensatedSum re, im;
  for (u64 t = 0; t < M; ++t) {
    if (arcs) {
      const bool major = arcs->classify(Rational(static_cast<i64>(t), static_cast<i64>(M))).major;
      if (major != (region == Region::Major)) continue;
    }
    const Complex v = integrand(gs, n, t, M);
    re += v.real();
    im += v.imag();
  }
  out.value = Complex(re.value(), im.value()) / static_cast<double>(M);
  return out;
}

double minor_envelope(double x, double q) {
  const double lx = std::log(x);
  return (std::pow(x, 0.8) + x / std::sqrt(q) + std::sqrt(x * q)) * lx * lx * lx;
}

std::vector<ArcSampleRow> minor_bound_diagnostic(const PrimeTable& table, const GammaParams& gamma,
                                                 const ArcDecomposition& arcs, const DiagnosticOptions& opts) {
  const u64 X = arcs.X();
  const ClassPrimes ci = primes_in_class(table, gamma.g, gamma.i, arcs.P(), X);
  const ClassPrimes cj = primes_in_class(table, gamma.g, gamma.j, arcs.P(), X);
  const u64 max_q = X / arcs.P();
  std::mt19937_64 rng(opts.seed);
  std::vector<ArcSampleRow> rows;
  const long max_attempts = 1000L * std::max(opts.samples, 1);
  for (long attempt = 0; attempt < max_attempts && static_cast<int>(rows.size()) < opts.samples; ++attempt) {
    const Rational alpha(static_cast<i64>(rng() % opts.grid), static_cast<i64>(opts.grid));
    const ArcClass cls = arcs.classify(alpha);
    if (opts.minor_only && cls.major) continue;
    ArcSampleRow row;
    row.alpha = alpha;
    row.major = cls.major;
    const Rational approx = dirichlet_approximation(alpha, max_q);
    if (cls.major) {
      row.q = cls.q;
      row.a = cls.a;
    } else {
      row.q = static_cast<u64>(approx.den);
      row.a = static_cast<u64>(approx.num);
    }
    row.S_i = exp_sum_S(ci, gamma.A, alpha);
    row.S_j = exp_sum_S(cj, gamma.B, alpha);
    row.envelope = minor_envelope(static_cast<double>(X), static_cast<double>(approx.den));
    row.ratio = std::abs(row.S_i) / row.envelope;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gblab
