#include "gblab/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "gblab/error.hpp"

namespace gblab {

namespace {

constexpr std::array<char, 4> kMagic = {'G', 'B', 'L', '1'};

std::vector<u64> small_primes(u64 bound) {
  std::vector<char> composite(bound + 1, 0);
  std::vector<u64> out;
  for (u64 m = 2; m <= bound; ++m) {
    if (composite[m]) continue;
    out.push_back(m);
    for (u64 k = m * m; k <= bound; k += m) composite[k] = 1;
  }
  return out;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Sieves [lo, hi) into words; lo is a multiple of 64.
void sieve_segment(std::vector<u64>& words, u64 lo, u64 hi, const std::vector<u64>& base) {
  for (u64 w = lo >> 6; w < ((hi + 63) >> 6); ++w) words[w] = ~u64{0};
  for (u64 p : base) {
    if (p * p >= hi) break;
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 m = start; m < hi; m += p) words[m >> 6] &= ~(u64{1} << (m & 63));
  }
  if (lo == 0) {
    words[0] &= ~u64{3};  // 0 and 1
  }
}

}  // namespace

void PrimeTable::recount() {
  count_ = 0;
  for (u64 w : words_) count_ += static_cast<u64>(__builtin_popcountll(w));
}

std::vector<u64> PrimeTable::primes(u64 lo, u64 hi) const {
  std::vector<u64> out;
  for_each_prime(lo, hi, [&](u64 p) { out.push_back(p); });
  return out;
}

PrimeTable sieve_primes(u64 limit, const SieveOptions& opts) {
  if (limit < 2) throw Error(ErrorCode::LimitTooLarge, "sieve limit must be at least 2");
  if (limit + 1 > opts.memory_budget_bits) {
    throw Error(ErrorCode::LimitTooLarge, "limit " + std::to_string(limit) + " exceeds the memory budget of " +
                                              std::to_string(opts.memory_budget_bits) + " bits");
  }
  PrimeTable table;
  table.limit_ = limit;
  const u64 nwords = (limit >> 6) + 1;
  table.words_.assign(nwords, 0);
  const std::vector<u64> base = small_primes(isqrt(limit) + 1);
  const u64 seg = std::max<u64>(64, (opts.segment_size + 63) / 64 * 64);
  const u64 end = nwords * 64;
  const u64 nseg = (end + seg - 1) / seg;

  auto work = [&](u64 first, u64 stride) {
    for (u64 s = first; s < nseg; s += stride) {
      const u64 lo = s * seg;
      sieve_segment(table.words_, lo, std::min(end, lo + seg), base);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(nseg)));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  // Clear bits above limit.
  if ((limit & 63) != 63) table.words_.back() &= (u64{1} << ((limit & 63) + 1)) - 1;
  table.recount();
  return table;
}

void PrimeTable::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::CacheFormat, "cannot write " + file.string());
  out.write(kMagic.data(), kMagic.size());
  std::array<char, 8> le{};
  for (int b = 0; b < 8; ++b) le[b] = static_cast<char>((limit_ >> (8 * b)) & 0xff);
  out.write(le.data(), le.size());
  const u64 nbytes = limit_ / 8 + 1;
  std::vector<char> bytes(nbytes);
  for (u64 k = 0; k < nbytes; ++k) bytes[k] = static_cast<char>((words_[k >> 3] >> (8 * (k & 7))) & 0xff);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::CacheFormat, "short write to " + file.string());
}

PrimeTable PrimeTable::load(const std::filesystem::path& file, u64 expected_limit) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::CacheFormat, "cannot open " + file.string());
  std::array<char, 4> magic{};
  std::array<unsigned char, 8> le{};
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(le.data()), le.size());
  if (!in || magic != kMagic) throw Error(ErrorCode::CacheFormat, "bad magic in " + file.string());
  u64 limit = 0;
  for (int b = 0; b < 8; ++b) limit |= u64{le[b]} << (8 * b);
  if (limit != expected_limit) {
    throw Error(ErrorCode::CacheFormat, "cache limit " + std::to_string(limit) + " != expected " +
                                            std::to_string(expected_limit));
  }
  const u64 nbytes = limit / 8 + 1;
  std::vector<unsigned char> bytes(nbytes);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(nbytes));
  if (!in) throw Error(ErrorCode::CacheFormat, "truncated bitset in " + file.string());
  PrimeTable t;
  t.limit_ = limit;
  t.words_.assign((limit >> 6) + 1, 0);
  for (u64 k = 0; k < nbytes; ++k) t.words_[k >> 3] |= u64{bytes[k]} << (8 * (k & 7));
  if ((limit & 63) != 63) t.words_.back() &= (u64{1} << ((limit & 63) + 1)) - 1;
  t.recount();
  return t;
}

PrimeTable cached_sieve(u64 limit, const SieveOptions& opts) {
  const char* dir = std::getenv("GOLDBACH_LAB_CACHE");
  if (dir == nullptr || *dir == '\0') return sieve_primes(limit, opts);
  const std::filesystem::path file = std::filesystem::path(dir) / ("primes_" + std::to_string(limit) + ".gbl");
  std::error_code ec;
  if (std::filesystem::exists(file, ec)) {
    try {
      return PrimeTable::load(file, limit);
    } catch (const Error&) {
      // stale or corrupt: fall through and rebuild
    }
  }
  PrimeTable t = sieve_primes(limit, opts);
  std::filesystem::create_directories(dir, ec);
  try {
    t.save(file);
  } catch (const Error&) {
    // read-only cache directory is not fatal
  }
  return t;
}

ClassPrimes primes_in_class(const PrimeTable& table, u64 g, u64 i, u64 P, u64 X) {
  if (X > table.limit()) {
    throw Error(ErrorCode::BoundsExceeded, "class bound X=" + std::to_string(X) + " exceeds sieve limit " +
                                               std::to_string(table.limit()));
  }
  ClassPrimes cp;
  cp.g = g;
  cp.i = i;
  cp.P = P;
  cp.X = X;
  if (g == 0) return cp;
  table.for_each_prime(P + 1, X, [&](u64 p) {
    if (p % g == i % g) {
      cp.primes.push_back(p);
      cp.logs.push_back(std::log(static_cast<double>(p)));
    }
  });
  return cp;
}

double chebyshev_theta(const ClassPrimes& cp) {
  CompensatedSum s;
  for (double l : cp.logs) s += l;
  return s.value();
}

}  // namespace gblab
