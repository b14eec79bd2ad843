#pragma once

// Truncated sums over zeta zeros and the residuals of the explicit formulas
// they feed. Each zero rho = 1/2 + i gamma from the table is paired with its
// conjugate, so every sum is 2 Re(sum over 0 < gamma <= T) and real by
// construction.
//
//   R(x)     = -sum_rho x^rho / rho                    + O(x log x log log x / T) + O(log x)
//   R_1(N)   = -sum_rho N^{rho+1} / (rho (rho + 1))    + O(N)
//   G(N)     = N^2/2 - 2 sum_rho N^{rho+1} / (rho (rho + 1)) + O(N log^3 N)   (RH)
//   Psi(N)   = N - sum_rho Gamma(rho) N^rho - log 2 pi + O(1/N)
//   F(N)     = N^2 - 2 sum_rho Gamma(rho) N^{rho+1} + (Psi(N) - N)^2 + O(N)
//
// Implied constants are never assumed; residuals are reported against the
// envelope shapes and constants are fitted downstream.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "glab/sieve.hpp"
#include "glab/summation.hpp"
#include "glab/zeros.hpp"

namespace glab {

struct ZeroSumResult {
  double value = 0.0;
  /// Truncation height T.
  double height = 0.0;
  std::size_t pairs_used = 0;
  double tail_estimate = 0.0;
};

struct ResidualRecord {
  double x = 0.0;
  double truth = 0.0;
  double formula = 0.0;
  double residual = 0.0;
  double envelope = 0.0;
  /// Secondary envelope recorded alongside (0 when unused).
  double alt_envelope = 0.0;
  double height = 0.0;
  std::size_t pairs_used = 0;
};

/// 2 sum_{0 < gamma <= T} Re(x^rho / rho). Requires x >= 1.
ZeroSumResult sum_rho(const ZeroTable& zeros, double x, double height, Exec exec = Exec::parallel);

/// 2 sum_{0 < gamma <= T} Re(N^{rho+1} / (rho (rho + 1))). Requires N >= 1.
/// tail_estimate = (N^{3/2} / pi) (log(T / 2 pi) + 1) / T, the integral of
/// 2 N^{3/2} / t^2 against the zero density log(t / 2 pi) / 2 pi.
ZeroSumResult sum_rho1(const ZeroTable& zeros, double n, double height, Exec exec = Exec::parallel);

/// Bound on sum_{gamma > T} 2 |Gamma(1/2 + i gamma)|, using
/// |Gamma(1/2 + it)| <= sqrt(2 pi) e^{-pi t / 2} and at most log(t + 3) + 2
/// zeros in each window (t, t + 1].
double gamma_zero_tail(double height);

/// Height beyond which the Gamma-weighted zero sum drops below
/// relative_tolerance (tail relative to N^{1/2 + shift}).
double gamma_sum_cutoff(double relative_tolerance = 1e-12);

/// 2 sum Re(Gamma(rho) N^{rho + shift}), shift in {0, 1}. Without an explicit
/// height the cutoff is gamma_sum_cutoff(), chosen so the dropped tail is
/// below 1e-12 N^{1/2 + shift}.
ZeroSumResult sum_gamma_rho(const ZeroTable& zeros, double n, int shift,
                            std::optional<double> height = std::nullopt);

/// truth R(x), formula -sum_rho(x, T); envelope x log x log log x / T + log x.
ResidualRecord psi_explicit_residual(const LambdaTable& table, const ZeroTable& zeros,
                                     std::uint64_t x, double height);

/// truth R_1(N), formula -sum_rho1(N, T); envelope N.
ResidualRecord psi1_explicit_residual(const LambdaTable& table, const ZeroTable& zeros,
                                      std::uint64_t n, double height);

/// truth G(N), formula N^2/2 - 2 sum_rho1(N, T); envelope N log^3 N,
/// alt_envelope N^{4/3} (log N)^{4/3}.
ResidualRecord fujii_residual(const LambdaTable& table, const ZeroTable& zeros, std::uint64_t n,
                              double height);

/// truth Psi(N), formula N - sum_gamma_rho(N, 0) - log 2 pi; envelope 1/N.
ResidualRecord smoothed_psi_residual(const LambdaTable& table, const ZeroTable& zeros,
                                     std::uint64_t n, std::optional<double> height = std::nullopt);

/// truth F(N), formula N^2 - 2 sum_gamma_rho(N, 1) + (Psi(N) - N)^2; envelope N.
ResidualRecord smooth_residual(const LambdaTable& table, const ZeroTable& zeros, std::uint64_t n,
                               std::optional<double> height = std::nullopt);

}  // namespace glab
