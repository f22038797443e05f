#include "gblab/numeric.hpp"

#include "gblab/error.hpp"

namespace gblab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EvenCoefficient: return "EvenCoefficient";
    case ErrorCode::ResidueOutOfRange: return "ResidueOutOfRange";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::InvalidPolynomial: return "InvalidPolynomial";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::LimitTooLarge: return "LimitTooLarge";
    case ErrorCode::BoundsExceeded: return "BoundsExceeded";
    case ErrorCode::ArrayBudgetExceeded: return "ArrayBudgetExceeded";
    case ErrorCode::ArcsOverlap: return "ArcsOverlap";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::CacheFormat: return "CacheFormat";
  }
  return "Unknown";
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  if (n < 2) return out;
  auto strip = [&](u64 p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel
  for (u64 p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

int moebius(u64 n) {
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

u64 radical(u64 n) {
  u64 r = 1;
  for (const auto& [p, e] : factorize(n)) r *= p;
  return r;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace gblab
