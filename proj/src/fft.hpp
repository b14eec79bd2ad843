#pragma once

// Thin FFTW wrappers used by the psi_2 and circle modules.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace glab::fft {

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// out[k] = sum_{i + j = k} a[i] a[j] for k < out_len, via a real transform
/// of length next_pow2(2 a.size()).
std::vector<double> self_convolution(std::span<const double> a, std::size_t out_len);

/// X_j = sum_{n < coeffs.size()} coeffs[n] exp(+2 pi i n j / m) for j < m.
/// Requires coeffs.size() <= m.
std::vector<std::complex<double>> sample_on_circle(std::span<const double> coeffs, std::size_t m);

}  // namespace glab::fft
