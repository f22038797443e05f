#include "gblab/convolution.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <complex>

#include "gblab/error.hpp"

namespace gblab {

namespace {

// Montgomery arithmetic modulo an odd m < 2^62, R = 2^64.
class Montgomery {
 public:
  explicit Montgomery(u64 m) : m_(m) {
    u64 inv = m;  // Newton iteration for m^{-1} mod 2^64
    for (int k = 0; k < 6; ++k) inv *= 2 - m * inv;
    neg_inv_ = ~inv + 1;
    r2_ = static_cast<u64>((static_cast<u128>(1) << 64) % m);
    r2_ = static_cast<u64>(static_cast<u128>(r2_) * r2_ % m);
  }

  u64 modulus() const noexcept { return m_; }

  u64 reduce(u128 t) const noexcept {
    const u64 u = static_cast<u64>(t) * neg_inv_;
    const u64 r = static_cast<u64>((t + static_cast<u128>(u) * m_) >> 64);
    return r >= m_ ? r - m_ : r;
  }
  u64 mul(u64 a, u64 b) const noexcept { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 a) const noexcept { return mul(a % m_, r2_); }
  u64 from(u64 a) const noexcept { return reduce(a); }
  u64 add(u64 a, u64 b) const noexcept {
    const u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + m_ - b; }
  u64 pow(u64 base_mont, u64 e) const noexcept {
    u64 r = to(1);
    while (e) {
      if (e & 1) r = mul(r, base_mont);
      base_mont = mul(base_mont, base_mont);
      e >>= 1;
    }
    return r;
  }

 private:
  u64 m_;
  u64 neg_inv_;
  u64 r2_;
};

// In-place transform of Montgomery-form data; size is a power of two.
void ntt(std::vector<u64>& a, const Montgomery& mt, u64 root_mont, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const u64 m = mt.modulus();
  std::vector<u64> tw;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = mt.pow(root_mont, (m - 1) / len);
    if (inverse) w = mt.pow(w, len - 1);
    const std::size_t half = len / 2;
    tw.resize(half);
    tw[0] = mt.to(1);
    for (std::size_t k = 1; k < half; ++k) tw[k] = mt.mul(tw[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const u64 u = a[i + k];
        const u64 v = mt.mul(a[i + k + half], tw[k]);
        a[i + k] = mt.add(u, v);
        a[i + k + half] = mt.sub(u, v);
      }
    }
  }
  if (inverse) {
    const u64 n_inv = mt.pow(mt.to(n % m), m - 2);
    for (auto& x : a) x = mt.mul(x, n_inv);
  }
}

std::size_t ceil_pow2(std::size_t n) {
  std::size_t s = 1;
  while (s < n) s <<= 1;
  return s;
}

u64 inverse_mod(u64 a, u64 m) {
  // extended Euclid on signed 128-bit
  i128 t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    const i128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

}  // namespace

std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, const NttPrime& prime) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = ceil_pow2(out_len);
  if (n > (std::size_t{1} << 40)) throw Error(ErrorCode::ArrayBudgetExceeded, "transform length exceeds 2^40");
  const Montgomery mt(prime.modulus);
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (std::size_t k = 0; k < a.size(); ++k) fa[k] = mt.to(a[k]);
  for (std::size_t k = 0; k < b.size(); ++k) fb[k] = mt.to(b[k]);
  const u64 root = mt.to(prime.root);
  ntt(fa, mt, root, false);
  ntt(fb, mt, root, false);
  for (std::size_t k = 0; k < n; ++k) fa[k] = mt.mul(fa[k], fb[k]);
  ntt(fa, mt, root, true);
  fa.resize(out_len);
  for (auto& x : fa) x = mt.from(x);
  return fa;
}

std::vector<u64> convolve_ntt(std::span<const u64> a, std::span<const u64> b) {
  const std::vector<u64> r1 = convolve_mod(a, b, kNttPrime1);
  const std::vector<u64> r2 = convolve_mod(a, b, kNttPrime2);
  const u64 p1 = kNttPrime1.modulus;
  const u64 p2 = kNttPrime2.modulus;
  const u64 p1_inv = inverse_mod(p1 % p2, p2);
  std::vector<u64> out(r1.size());
  for (std::size_t k = 0; k < r1.size(); ++k) {
    // x = r1 + p1 * ((r2 - r1) * p1^{-1} mod p2)
    const u64 diff = (r2[k] + p2 - r1[k] % p2) % p2;
    const u64 h = static_cast<u64>(static_cast<u128>(diff) * p1_inv % p2);
    const u128 x = static_cast<u128>(h) * p1 + r1[k];
    if (x >> 64) throw Error(ErrorCode::Overflow, "convolution coefficient exceeds 64 bits");
    out[k] = static_cast<u64>(x);
  }
  return out;
}

std::vector<u64> convolve_direct(std::span<const u64> a, std::span<const u64> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> out(a.size() + b.size() - 1, 0);
  std::vector<std::size_t> nz_b;
  for (std::size_t k = 0; k < b.size(); ++k)
    if (b[k] != 0) nz_b.push_back(k);
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == 0) continue;
    for (std::size_t y : nz_b) out[x + y] += a[x] * b[y];
  }
  return out;
}

std::vector<u64> convolve_exact(std::span<const u64> a, std::span<const u64> b, std::size_t threshold) {
  if (a.empty() || b.empty()) return {};
  if (a.size() + b.size() - 1 <= threshold) return convolve_direct(a, b);
  return convolve_ntt(a, b);
}

Eigen::VectorXd convolve_real(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() == 0 || b.size() == 0) return {};
  const Eigen::Index out_len = a.size() + b.size() - 1;
  const auto n = static_cast<Eigen::Index>(ceil_pow2(static_cast<std::size_t>(out_len)));
  Eigen::VectorXd pa = Eigen::VectorXd::Zero(n), pb = Eigen::VectorXd::Zero(n);
  pa.head(a.size()) = a;
  pb.head(b.size()) = b;
  Eigen::FFT<double> fft;
  Eigen::VectorXcd fa, fb;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  fa = fa.cwiseProduct(fb);
  Eigen::VectorXd out;
  fft.inv(out, fa);
  out.conservativeResize(out_len);
  return out;
}

}  // namespace gblab
