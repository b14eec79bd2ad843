#pragma once

// Generating functions on the circle |z| = r = e^{-1/N}, z = r e(alpha):
//
//   Psi(z) = sum_n Lambda(n) z^n,   I(z) = z / (1 - z),
//   K_N(z) = sum_{n <= N} z^{-n} = z^{-N} (1 - z^N) / (1 - z).
//
// The constant term of (Psi - I)^2 K_N is sum_{n <= N} psi_2^0(n). It is
// extracted by averaging over M equally spaced points: the integrand is a
// Laurent polynomial of degree range [1 - N, 2 n_cut], so M > 2 n_cut nodes
// recover it exactly up to rounding.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "glab/sieve.hpp"
#include "glab/summation.hpp"

namespace glab {

struct CircleContext {
  std::uint64_t N = 0;
  double r = 0.0;
  std::uint64_t n_cut = 0;
  std::size_t M = 0;

  std::complex<double> z(double alpha) const;
};

inline constexpr std::uint64_t kDefaultCutFactor = 40;

/// n_cut defaults to 40 N (so r^{n_cut} = e^{-40}); M defaults to twice
/// the next power of two above 2 n_cut. Throws AliasingError unless
/// M > 2 n_cut and M is a power of two.
CircleContext make_circle_context(std::uint64_t N, std::optional<std::uint64_t> n_cut = std::nullopt,
                                  std::optional<std::size_t> M = std::nullopt);

struct SeriesValue {
  std::complex<double> value;
  /// Bound on sum_{n > n_cut} (log n) r^n.
  double tail_bound = 0.0;
};

/// sum_{n <= n_cut} Lambda(n) r^n e(n alpha), alpha in [0, 1).
SeriesValue eval_psi_z(const LambdaTable& table, const CircleContext& ctx, double alpha);

/// Bound on sum_{n > n_cut} (log n) r^n: with n_0 = n_cut + 1 and
/// log n <= log n_0 + (n - n_0) / n_0 it is
/// r^{n_0} (log n_0 / (1 - r) + r / (n_0 (1 - r)^2)).
double log_weighted_tail(double r, std::uint64_t n_cut);

std::complex<double> kernel_I(std::complex<double> z);
std::complex<double> kernel_K(std::complex<double> z, std::uint64_t N);
/// sum_{n=1}^{N} z^{-n} term by term.
std::complex<double> kernel_K_direct(std::complex<double> z, std::uint64_t N);

struct KernelValues {
  std::complex<double> I;
  std::complex<double> K;
};

KernelValues eval_kernel(const CircleContext& ctx, double alpha);

struct KernelBoundFit {
  /// max |K| / N.
  double c1 = 0.0;
  /// max |K| |1 - z|.
  double c2 = 0.0;
};

/// Fits |K| <= min(c1 N, c2 / |1 - z|) over alpha = j / points.
KernelBoundFit fit_kernel_bound(const CircleContext& ctx, std::size_t points);

/// (1/M) sum_{j < M} f(radius e(j / M)).
std::complex<double> circle_average(std::size_t M, double radius,
                                    const std::function<std::complex<double>(std::complex<double>)>& f,
                                    Exec exec = Exec::parallel);

enum class ContourBackend {
  /// Samples of Psi - I from one FFT of Lambda_0(n) r^n.
  fft,
  /// Psi summed over prime powers at every node, I and K in closed form.
  direct,
};

struct ContourResult {
  double value = 0.0;
  double imag = 0.0;
  std::uint64_t N = 0;
  std::uint64_t n_cut = 0;
  std::size_t M = 0;
  ContourBackend backend = ContourBackend::fft;
};

ContourResult contour_psi20(const LambdaTable& table, const CircleContext& ctx,
                            ContourBackend backend = ContourBackend::fft, Exec exec = Exec::parallel);

struct ParsevalResult {
  /// (1/M) sum_j |P(z_j)|^2.
  double lhs = 0.0;
  /// sum_n |c_n|^2 r^{2n}, or sum_n c_n^2 for raw coefficients.
  double rhs = 0.0;
  double relative_error() const;
};

/// P(z) = sum_{1 <= n <= n_cut} (Lambda(n) - 1) z^n.
ParsevalResult parseval_check(const LambdaTable& table, const CircleContext& ctx);

/// Same for arbitrary real coefficients sampled on the unit circle.
ParsevalResult parseval_check(std::span<const double> coeffs, std::size_t M);

struct ProfilePoint {
  double alpha = 0.0;
  double modulus = 0.0;
  /// |1 - z| / max(1/N, alpha).
  double ratio = 0.0;
  /// |1 - z|^2 - (1 - r)^2 - 4 r sin^2(pi alpha).
  double identity_residual = 0.0;
};

/// |1 - z| on points + 1 equally spaced alpha in [0, 1/2].
std::vector<ProfilePoint> one_minus_z_profile(const CircleContext& ctx, std::size_t points);

struct ArcSplit {
  double delta = 0.0;
  /// Contribution of alpha within delta of 0 (mod 1).
  std::complex<double> major;
  std::complex<double> minor;
  std::size_t major_nodes = 0;
};

/// Splits the contour sum at |alpha| <= delta. Diagnostic only.
ArcSplit arc_split(const LambdaTable& table, const CircleContext& ctx, double delta);

}  // namespace glab
