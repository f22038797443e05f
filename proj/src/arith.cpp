#include "gblab/arith.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gblab/error.hpp"

namespace gblab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Polynomial::Polynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  // Leading zeros are not part of the degree.
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) {
    throw Error(ErrorCode::InvalidPolynomial, "degree must be at least 1");
  }
  if (coeffs_.back() <= 0) {
    throw Error(ErrorCode::InvalidPolynomial, "leading coefficient must be positive");
  }
}

Polynomial Polynomial::parse(std::string_view text) {
  std::vector<mpz_class> high_to_low;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view field =
        trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    mpz_class c;
    std::string s(field);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty() || c.set_str(s, 10) != 0) {
      throw Error(ErrorCode::InvalidPolynomial, "cannot parse coefficient '" + std::string(field) + "'");
    }
    high_to_low.push_back(c);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::reverse(high_to_low.begin(), high_to_low.end());
  return Polynomial(std::move(high_to_low));
}

std::string Polynomial::to_string() const {
  std::string out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (!out.empty()) out += ',';
    out += it->get_str();
  }
  return out;
}

mpz_class poly_eval(const Polynomial& f, const mpz_class& n) {
  const auto& c = f.coeffs();
  mpz_class acc = c.back();
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
    acc = acc * n + *it;
  }
  return acc;
}

u64 GammaParams::class_sum() const noexcept {
  return static_cast<u64>((static_cast<u128>(A % g) * (i % g) + static_cast<u128>(B % g) * (j % g)) % g);
}

GammaParams validate_gamma(GammaParams gamma) {
  if (gamma.A % 2 == 0 || gamma.B % 2 == 0) {
    throw Error(ErrorCode::EvenCoefficient, "A and B must be positive odd integers (A=" + std::to_string(gamma.A) +
                                                ", B=" + std::to_string(gamma.B) + ")");
  }
  if (gamma.g < 2 || gamma.i == 0 || gamma.i >= gamma.g || gamma.j == 0 || gamma.j >= gamma.g) {
    throw Error(ErrorCode::ResidueOutOfRange, "need g >= 2 and 0 < i, j < g (g=" + std::to_string(gamma.g) +
                                                  ", i=" + std::to_string(gamma.i) + ", j=" + std::to_string(gamma.j) +
                                                  ")");
  }
  if (std::gcd(gamma.i, gamma.g) != 1 || std::gcd(gamma.j, gamma.g) != 1) {
    throw Error(ErrorCode::NotCoprime, "need gcd(i,g) = gcd(j,g) = 1 (g=" + std::to_string(gamma.g) +
                                           ", i=" + std::to_string(gamma.i) + ", j=" + std::to_string(gamma.j) + ")");
  }
  gamma.ab_gcd = std::gcd(gamma.A, gamma.B);
  gamma.ab_gcd_warning = gamma.ab_gcd > 1;
  gamma.validated = true;
  return gamma;
}

LocalSolvability local_solvable(const Polynomial& f, const GammaParams& gamma) {
  LocalSolvability out;
  const mpz_class g(static_cast<unsigned long>(gamma.g));
  const mpz_class rhs(static_cast<unsigned long>(gamma.class_sum()));
  for (u64 m = 0; m < gamma.g; ++m) {
    mpz_class lhs = target(f, m) - rhs;
    mpz_class r;
    mpz_mod(r.get_mpz_t(), lhs.get_mpz_t(), g.get_mpz_t());
    if (r == 0) out.witnesses.push_back(m);
  }
  out.solvable = !out.witnesses.empty();
  return out;
}

Ratio parse_ratio(std::string_view text) {
  text = trim(text);
  auto parse_u64 = [&](std::string_view s) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::InvalidConfig, "cannot parse ratio '" + std::string(text) + "'");
    }
    return v;
  };
  Ratio r;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    r.num = parse_u64(trim(text.substr(0, slash)));
    r.den = parse_u64(trim(text.substr(slash + 1)));
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 18) throw Error(ErrorCode::InvalidConfig, "too many decimals in '" + std::string(text) + "'");
    u64 scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const u64 whole = dot == 0 ? 0 : parse_u64(text.substr(0, dot));
    r.num = whole * scale + (frac.empty() ? 0 : parse_u64(frac));
    r.den = scale;
  } else {
    r.num = parse_u64(text);
    r.den = 1;
  }
  if (r.den == 0) throw Error(ErrorCode::InvalidConfig, "zero denominator in '" + std::string(text) + "'");
  const u64 d = std::gcd(r.num, r.den);
  if (d > 1) {
    r.num /= d;
    r.den /= d;
  }
  return r;
}

Ratio default_delta(int degree) {
  // 1/60 < 1/(24k) holds for k <= 2.
  if (degree <= 2) return Ratio{1, 60};
  return Ratio{1, static_cast<u64>(30 * degree)};
}

namespace {

// Smallest P >= 1 with P^den >= X^(6 num), i.e. ceil(X^(6 num / den)).
u64 ceil_root_power(const mpz_class& X, const Ratio& delta) {
  mpz_class rhs;
  mpz_pow_ui(rhs.get_mpz_t(), X.get_mpz_t(), 6 * delta.num);
  const double guess = std::ceil(std::pow(X.get_d(), 6.0 * delta.value()));
  u64 p = guess < 1.0 ? 1 : static_cast<u64>(guess);
  auto pow_ge = [&](u64 base) {
    mpz_class lhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), base, delta.den);
    return lhs >= rhs;
  };
  while (p > 1 && pow_ge(p - 1)) --p;
  while (!pow_ge(p)) ++p;
  return p;
}

}  // namespace

ScanBounds derive_bounds(const Polynomial& f, const ScanConfig& cfg) {
  if (cfg.N == 0) throw Error(ErrorCode::InvalidConfig, "N must be positive");
  ScanBounds b;
  b.X = target(f, cfg.N);
  if (b.X <= 0) throw Error(ErrorCode::InvalidConfig, "X = 2f(N) must be positive, got " + b.X.get_str());
  const int k = f.degree();
  b.kappa = std::pow(2.0, -1.0 / k);
  b.delta = cfg.delta.value_or(default_delta(k));
  if (b.delta.num == 0 || static_cast<u128>(24) * k * b.delta.num >= b.delta.den) {
    throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1/(24k)) with k = " + std::to_string(k));
  }
  if (cfg.cutoff == CutoffMode::Full) {
    b.P = 1;
  } else if (cfg.P_override) {
    b.P = *cfg.P_override;
  } else {
    b.P = ceil_root_power(b.X, b.delta);
  }
  if (cfg.cutoff == CutoffMode::Paper && b.P < 2) {
    throw Error(ErrorCode::InvalidConfig, "paper-mode cutoff P must be at least 2");
  }
  b.Q = b.X.get_d() / static_cast<double>(b.P);
  b.n_hi = cfg.N;
  b.n_lo = 1;
  if (cfg.kappa_window) {
    // n > 2^(-1/k) N  <=>  2 n^k > N^k, decided exactly.
    mpz_class Nk;
    mpz_ui_pow_ui(Nk.get_mpz_t(), cfg.N, k);
    u64 lo = static_cast<u64>(std::floor(b.kappa * static_cast<double>(cfg.N)));
    auto inside = [&](u64 n) {
      mpz_class nk;
      mpz_ui_pow_ui(nk.get_mpz_t(), n, k);
      return 2 * nk > Nk;
    };
    if (lo == 0) lo = 1;
    while (lo > 1 && inside(lo - 1)) --lo;
    while (!inside(lo)) ++lo;
    b.n_lo = lo;
  }
  return b;
}

Eligibility eligible_n(const Polynomial& f, const GammaParams& gamma, const ScanConfig& cfg) {
  Eligibility out;
  const ScanBounds b = derive_bounds(f, cfg);
  const mpz_class g(static_cast<unsigned long>(gamma.g));
  const mpz_class rhs(static_cast<unsigned long>(gamma.class_sum()));
  const mpz_class d(static_cast<unsigned long>(std::gcd(gamma.A, gamma.B)));
  const bool filter_gcd = d > 1 && !cfg.keep_gcd_obstructed;
  mpz_class r;
  for (u64 n = b.n_lo; n <= b.n_hi; ++n) {
    const mpz_class t = target(f, n);
    mpz_class diff = t - rhs;
    mpz_mod(r.get_mpz_t(), diff.get_mpz_t(), g.get_mpz_t());
    if (r != 0) continue;
    if (t <= 0) {
      ++out.nonpositive;
      continue;
    }
    if (filter_gcd && !mpz_divisible_p(t.get_mpz_t(), d.get_mpz_t())) {
      ++out.gcd_obstructed;
      continue;
    }
    out.n.push_back(n);
  }
  return out;
}

}  // namespace gblab
