#pragma once

#include <string>

#include "gblab/arith.hpp"
#include "gblab/numeric.hpp"

namespace gblab {

/// c_q(m) = sum over a mod q, gcd(a,q)=1, of e(am/q), via the closed form
/// mu(q/d) phi(q) / phi(q/d) with d = gcd(q, m).
i64 ramanujan_sum(u64 q, i64 m);

enum class SingularMethod { EulerProduct, PartialSum };
std::string to_string(SingularMethod m);

inline constexpr u64 kDefaultEulerTruncation = 1'000'000;
inline constexpr u64 kDefaultPartialTruncation = 10'000;

struct SingularValue {
  u64 n = 0;
  double value = 0.0;
  SingularMethod method = SingularMethod::EulerProduct;
  u64 truncation = 0;
  double err_bound = 0.0;  // bound on |value - true series|
};

/// Singular series of n.
///
/// EulerProduct: prod over odd primes p <= truncation, p !| n, of
/// 1 - 1/(p-1)^2, times 1 + 1/(p-1) for every prime p | n (including those
/// above the truncation). Odd n gives exactly 0. Values are memoised by
/// (radical(n), truncation). The tail bound is value / (truncation - 1).
///
/// PartialSum: sum_{q <= truncation} mu(q)^2 c_q(-n) / phi(q)^2 accumulated
/// in exact rationals and rounded once. err_bound is a Rankin-type bound on
/// the omitted tail.
///
/// n >= 1, truncation >= 2.
SingularValue singular_series(u64 n, SingularMethod method = SingularMethod::EulerProduct,
                              u64 truncation = kDefaultEulerTruncation);

/// S(n) * n / (g^2 A B) with the Euler product at its default truncation.
/// The caller passes the target value itself (2 f(n)).
double main_term(u64 target, const GammaParams& gamma);

}  // namespace gblab
