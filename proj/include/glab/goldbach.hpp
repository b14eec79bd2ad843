#pragma once

// Goldbach sums over the von Mangoldt table.
//
//   psi_2(n)   = sum_{m + m' = n} Lambda(m) Lambda(m')
//   G(N)       = sum_{n <= N} psi_2(n) = sum_{m < N} Lambda(m) psi(N - m)
//   E(N)       = G(N) - N^2 / 2
//   psi_2^0(n) = sum_{m + m' = n} Lambda_0(m) Lambda_0(m'),  Lambda_0 = Lambda - 1 on n >= 1
//   Psi(N)     = sum_n Lambda(n) e^{-n/N},  F(N) = Psi(N)^2 = sum_n psi_2(n) e^{-n/N}

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "glab/sieve.hpp"
#include "glab/summation.hpp"

namespace glab {

enum class Psi2Backend { direct, fft };

struct Psi2Series {
  std::uint64_t n_max = 0;
  /// values[n] = psi_2(n) for 0 <= n <= n_max (entries 0..3 are zero).
  std::vector<double> values;
  Psi2Backend backend = Psi2Backend::direct;
  /// A-priori bound on the entrywise rounding error of the backend.
  double error_bound = 0.0;

  double operator[](std::uint64_t n) const { return values.at(n); }
};

/// Pairwise sum over prime powers, O(P^2). The parallel path partitions the
/// output range, so each entry sees the same accumulation order as the
/// serial path and the two are bit-identical.
Psi2Series psi2_direct(const LambdaTable& table, std::uint64_t n_max, Exec exec = Exec::parallel);

/// Self-convolution of the Lambda array through a real FFT.
Psi2Series psi2_fft(const LambdaTable& table, std::uint64_t n_max);

struct GoldbachSummary {
  std::uint64_t n = 0;
  double g = 0.0;
  double e = 0.0;
};

/// G(N) in O(pi(N)) by the interchange sum_{m < N} Lambda(m) psi(N - m).
GoldbachSummary big_G(const LambdaTable& table, std::uint64_t n);

/// big_G at every N of the grid; parallel over grid points.
std::vector<GoldbachSummary> big_G_grid(const LambdaTable& table, std::span<const std::uint64_t> ns,
                                        Exec exec = Exec::parallel);

struct Psi20Sums {
  /// sum_{n <= N} (psi_2(n) - 2 psi(n - 1) + (n - 1))
  double via_definition = 0.0;
  /// sum_{m <= N} Lambda_0(m) R(N - m)
  double via_remainder = 0.0;
};

/// Definition route takes sum psi_2 = G(N) from big_G.
Psi20Sums psi20_sum(const LambdaTable& table, std::uint64_t n);

/// Definition route sums the materialized psi_2 series term by term.
Psi20Sums psi20_sum(const LambdaTable& table, const Psi2Series& series, std::uint64_t n);

double psi20_via_remainder(const LambdaTable& table, std::uint64_t n);

/// One row of the exact identity
///   G(N) = 2 psi_1(N) - N(N-1)/2 + sum_{n <= N} psi_2^0(n)
/// with G from the interchange route and the psi_2^0 sum from the remainder
/// convolution, so the two sides share no intermediate.
struct IdentityCheck {
  std::uint64_t n = 0;
  double g = 0.0;
  double psi1 = 0.0;
  double psi20 = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

IdentityCheck identity_check(const LambdaTable& table, std::uint64_t n);

std::vector<IdentityCheck> identity_checks(const LambdaTable& table, std::span<const std::uint64_t> ns,
                                       Exec exec = Exec::parallel);

struct SmoothAverages {
  std::uint64_t n = 0;
  std::uint64_t n_cut = 0;
  double psi_n = 0.0;
  double f_n = 0.0;
  /// Bound on sum_{n > n_cut} Lambda(n) e^{-n/N}.
  double tail_bound = 0.0;
};

/// N e^{-n_cut/N} (log n_cut + 1): bounds sum_{n > n_cut} log(n) e^{-n/N}
/// for n_cut >= N (the summand is decreasing there, so the sum is below
/// the integral from n_cut, and E_1(a) <= e^{-a}/a).
double smooth_tail_bound(double n, std::uint64_t n_cut);

/// Smallest n_cut >= N with smooth_tail_bound(N, n_cut) < eps.
std::uint64_t smooth_cutoff(double n, double eps);

/// Default truncation target for Psi(N): 1e-6 / N, far below the O(1/N)
/// term of its explicit formula.
double default_smooth_eps(double n);

SmoothAverages smooth_averages(const LambdaTable& table, std::uint64_t n,
                               std::optional<double> eps = std::nullopt,
                               Exec exec = Exec::parallel);

}  // namespace glab
