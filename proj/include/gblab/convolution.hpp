#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "gblab/numeric.hpp"

namespace gblab {

/// NTT-friendly primes below 2^62 (c * 2^40 + 1) with primitive roots.
struct NttPrime {
  u64 modulus;
  u64 root;
};
inline constexpr NttPrime kNttPrime1{4611615649683210241ULL, 11};
inline constexpr NttPrime kNttPrime2{4611613450659954689ULL, 3};

/// Size below which convolve_exact uses the direct sparse product.
inline constexpr std::size_t kDirectConvolutionThreshold = std::size_t{1} << 16;

/// Cyclic-free (linear) convolution modulo one NTT prime.
std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, const NttPrime& prime);

/// Exact linear convolution of non-negative integer sequences. Uses the
/// two-prime NTT with CRT reconstruction; throws Overflow if a coefficient
/// would not fit in 64 bits. Inputs must be < 2^62.
std::vector<u64> convolve_ntt(std::span<const u64> a, std::span<const u64> b);

/// Exact product by iterating over nonzero entries; O(nnz(a) * nnz(b)).
std::vector<u64> convolve_direct(std::span<const u64> a, std::span<const u64> b);

/// Direct under kDirectConvolutionThreshold output length, NTT above.
std::vector<u64> convolve_exact(std::span<const u64> a, std::span<const u64> b,
                                std::size_t threshold = kDirectConvolutionThreshold);

/// Floating convolution through a real FFT (Eigen's FFT module).
Eigen::VectorXd convolve_real(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace gblab
