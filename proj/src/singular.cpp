#include "gblab/singular.hpp"

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "gblab/error.hpp"
#include "gblab/sieve.hpp"

namespace gblab {

i64 ramanujan_sum(u64 q, i64 m) {
  if (q == 0) throw Error(ErrorCode::InvalidConfig, "ramanujan_sum needs q >= 1");
  const u64 m_abs = m < 0 ? static_cast<u64>(-(m + 1)) + 1 : static_cast<u64>(m);
  const u64 d = std::gcd(q, m_abs);  // gcd(q, 0) = q
  const u64 r = q / d;
  const int mu = moebius(r);
  if (mu == 0) return 0;
  return mu * static_cast<i64>(euler_phi(q) / euler_phi(r));
}

std::string to_string(SingularMethod m) {
  return m == SingularMethod::EulerProduct ? "euler_product" : "partial_sum";
}

namespace {

// Odd primes up to the largest truncation requested so far.
class PrimeSupply {
 public:
  std::shared_ptr<const PrimeTable> get(u64 limit) {
    std::lock_guard lock(mu_);
    if (!table_ || table_->limit() < limit) {
      table_ = std::make_shared<const PrimeTable>(sieve_primes(std::max<u64>(limit, 1'000'000)));
    }
    return table_;
  }

 private:
  std::mutex mu_;
  std::shared_ptr<const PrimeTable> table_;
};

PrimeSupply& prime_supply() {
  static PrimeSupply s;
  return s;
}

// prod_{3 <= p <= T} (1 - 1/(p-1)^2), memoised per T.
double odd_base_product(u64 truncation) {
  static std::mutex mu;
  static std::map<u64, double> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(truncation); it != memo.end()) return it->second;
  }
  const auto table = prime_supply().get(truncation);
  double prod = 1.0;
  table->for_each_prime(3, truncation, [&](u64 p) {
    const double pm1 = static_cast<double>(p - 1);
    prod *= 1.0 - 1.0 / (pm1 * pm1);
  });
  std::lock_guard lock(mu);
  memo.emplace(truncation, prod);
  return prod;
}

double euler_product_value(u64 rad, u64 truncation) {
  if (rad % 2 == 1) return 0.0;
  double value = 2.0 * odd_base_product(truncation);
  for (u64 p : prime_divisors(rad)) {
    if (p == 2) continue;
    const double pd = static_cast<double>(p);
    // Replace the p !| n factor by the p | n factor where it was included.
    value *= p <= truncation ? (pd - 1.0) / (pd - 2.0) : pd / (pd - 1.0);
  }
  return value;
}

struct EulerKey {
  u64 rad;
  u64 truncation;
  auto operator<=>(const EulerKey&) const = default;
};

double euler_memoised(u64 n, u64 truncation) {
  static std::mutex mu;
  static std::map<EulerKey, double> memo;
  const EulerKey key{radical(n), truncation};
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const double v = euler_product_value(key.rad, truncation);
  std::lock_guard lock(mu);
  memo.emplace(key, v);
  return v;
}

// Squarefree q <= T with their prime factors and a common denominator
// L = lcm of phi(q)^2; weight[k] = L / phi(q_k)^2.
struct PartialTables {
  std::vector<u64> q;
  std::vector<std::vector<u64>> primes;
  std::vector<std::size_t> weight_index;
  std::vector<mpz_class> weight;
  mpz_class L;
};

std::shared_ptr<const PartialTables> partial_tables(u64 truncation) {
  static std::mutex mu;
  static std::map<u64, std::shared_ptr<const PartialTables>> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(truncation); it != memo.end()) return it->second;
  }
  auto t = std::make_shared<PartialTables>();
  std::map<u64, std::size_t> phi_slot;
  std::vector<u64> phis;
  for (u64 q = 1; q <= truncation; ++q) {
    const auto f = factorize(q);
    bool squarefree = true;
    u64 phi = 1;
    std::vector<u64> ps;
    for (const auto& [p, e] : f) {
      if (e > 1) squarefree = false;
      phi *= p - 1;
      ps.push_back(p);
    }
    if (!squarefree) continue;
    auto [it, inserted] = phi_slot.emplace(phi, phis.size());
    if (inserted) phis.push_back(phi);
    t->q.push_back(q);
    t->primes.push_back(std::move(ps));
    t->weight_index.push_back(it->second);
  }
  t->L = 1;
  for (u64 v : phis) {
    mpz_class v2 = mpz_class(static_cast<unsigned long>(v)) * static_cast<unsigned long>(v);
    mpz_lcm(t->L.get_mpz_t(), t->L.get_mpz_t(), v2.get_mpz_t());
  }
  t->weight.reserve(phis.size());
  for (u64 v : phis) {
    mpz_class w = t->L;
    mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(v));
    mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(v));
    t->weight.push_back(std::move(w));
  }
  std::lock_guard lock(mu);
  return memo.emplace(truncation, std::move(t)).first->second;
}

// C(sigma) = prod_p (1 + p^sigma / (p-1)^2), bounded above.
double rankin_constant(double sigma) {
  constexpr u64 kM = 1'000'000;
  const auto table = prime_supply().get(kM);
  double log_c = 0.0;
  table->for_each_prime(2, kM, [&](u64 p) {
    const double pd = static_cast<double>(p);
    log_c += std::log1p(std::pow(pd, sigma) / ((pd - 1.0) * (pd - 1.0)));
  });
  // Odd m > M: m^s/(m-1)^2 <= (1 + 3/M) m^(s-2); sum <= h(M) + M^(s-1) / (2 (1 - s)).
  const double M = static_cast<double>(kM);
  const double tail = (1.0 + 3.0 / M) * (std::pow(M, sigma - 2.0) + std::pow(M, sigma - 1.0) / (2.0 * (1.0 - sigma)));
  return std::exp(log_c + tail) * (1.0 + 1e-12);
}

double partial_tail_bound(u64 n, u64 truncation) {
  static std::mutex mu;
  static std::map<int, double> constants;
  constexpr std::array<int, 5> kSigmaTenths = {5, 6, 7, 8, 9};
  const auto n_primes = prime_divisors(n);
  double best = std::numeric_limits<double>::infinity();
  for (int s10 : kSigmaTenths) {
    const double sigma = s10 / 10.0;
    double c;
    {
      std::lock_guard lock(mu);
      auto it = constants.find(s10);
      if (it == constants.end()) it = constants.emplace(s10, rankin_constant(sigma)).first;
      c = it->second;
    }
    double local = 1.0;
    for (u64 p : n_primes) {
      const double pd = static_cast<double>(p);
      local *= 1.0 + std::pow(pd, sigma) / (pd - 1.0);
    }
    best = std::min(best, c * local * std::pow(static_cast<double>(truncation), -sigma));
  }
  return best;
}

}  // namespace

SingularValue singular_series(u64 n, SingularMethod method, u64 truncation) {
  if (n == 0) throw Error(ErrorCode::InvalidConfig, "singular_series needs n >= 1");
  if (truncation < 2) throw Error(ErrorCode::InvalidConfig, "singular_series needs truncation >= 2");
  SingularValue out;
  out.n = n;
  out.method = method;
  out.truncation = truncation;
  if (method == SingularMethod::EulerProduct) {
    out.value = euler_memoised(n, truncation);
    const double eps = std::numeric_limits<double>::epsilon();
    out.err_bound = out.value * (1.0 / static_cast<double>(truncation - 1) + 4.0 * eps * static_cast<double>(truncation));
    return out;
  }

  const auto t = partial_tables(truncation);
  mpz_class numer = 0;
  for (std::size_t k = 0; k < t->q.size(); ++k) {
    // squarefree q: c_q(n) = mu(q/d) phi(d), d = gcd(q, n)
    long c = 1;
    for (u64 p : t->primes[k]) {
      if (n % p == 0) {
        c *= static_cast<long>(p - 1);
      } else {
        c = -c;
      }
    }
    const mpz_class& w = t->weight[t->weight_index[k]];
    if (c > 0) {
      mpz_addmul_ui(numer.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(c));
    } else {
      mpz_submul_ui(numer.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(-c));
    }
  }
  mpq_class exact(numer, t->L);
  exact.canonicalize();
  out.value = exact.get_d();
  out.err_bound = partial_tail_bound(n, truncation) + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
  return out;
}

double main_term(u64 target, const GammaParams& gamma) {
  if (target == 0) return 0.0;
  const double s = singular_series(target, SingularMethod::EulerProduct, kDefaultEulerTruncation).value;
  const double g = static_cast<double>(gamma.g);
  return s * static_cast<double>(target) / (g * g * static_cast<double>(gamma.A) * static_cast<double>(gamma.B));
}

}  // namespace gblab
