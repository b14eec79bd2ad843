#include "glab/explicit_formula.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "glab/errors.hpp"
#include "glab/gamma.hpp"
#include "glab/goldbach.hpp"

namespace glab {

namespace {

constexpr double kPi = std::numbers::pi;

// Phases gamma * log x are formed in double. With gamma <= 1e5 and x <= 1e12
// the product stays below 3e6 radians, so its rounding error is under 1e-9.
template <typename Term>
ZeroSumResult conjugate_pair_sum(const ZeroTable& zeros, double height, Exec exec, Term&& term) {
  zeros.require_coverage(height);
  const auto gammas = zeros.gammas();
  const std::size_t count = zeros.count_upto(height);
  ZeroSumResult out;
  out.height = height;
  out.pairs_used = count;
  out.value = 2.0 * reduce_sum<double>(count, [&](std::size_t i) { return term(gammas[i]); }, exec);
  return out;
}

}  // namespace

ZeroSumResult sum_rho(const ZeroTable& zeros, double x, double height, Exec exec) {
  if (!(x >= 1.0)) throw DomainError("sum_rho requires x >= 1");
  const double log_x = std::log(x);
  const double sqrt_x = std::sqrt(x);
  auto out = conjugate_pair_sum(zeros, height, exec, [&](double g) {
    const double phase = g * log_x;
    return sqrt_x * (0.5 * std::cos(phase) + g * std::sin(phase)) / (0.25 + g * g);
  });
  const double loglog = std::max(std::log(std::max(log_x, 1.0)), 1.0);
  out.tail_estimate = height > 0.0 ? x * std::max(log_x, 1.0) * loglog / height : x;
  return out;
}

ZeroSumResult sum_rho1(const ZeroTable& zeros, double n, double height, Exec exec) {
  if (!(n >= 1.0)) throw DomainError("sum_rho1 requires N >= 1");
  const double log_n = std::log(n);
  const double n32 = n * std::sqrt(n);
  auto out = conjugate_pair_sum(zeros, height, exec, [&](double g) {
    const std::complex<double> rho(0.5, g);
    const std::complex<double> w = rho * (rho + 1.0);
    const double phase = g * log_n;
    const std::complex<double> e(std::cos(phase), std::sin(phase));
    return n32 * (e / w).real();
  });
  const double t = std::max(height, 2.0 * kPi);
  out.tail_estimate = n32 / kPi * (std::log(t / (2.0 * kPi)) + 1.0) / t;
  return out;
}

double gamma_zero_tail(double height) {
  const double t = std::max(height, 0.0);
  const double q = std::exp(-kPi / 2.0);
  const double a = std::log(t + 3.0) + 2.0;
  // sum_j (a + j) q^j with log(t + j + 3) <= log(t + 3) + j
  const double series = a / (1.0 - q) + q / ((1.0 - q) * (1.0 - q));
  return 2.0 * std::sqrt(2.0 * kPi) * std::exp(-kPi * t / 2.0) * series;
}

double gamma_sum_cutoff(double relative_tolerance) {
  double lo = 0.0;
  double hi = 1.0;
  while (gamma_zero_tail(hi) >= relative_tolerance) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 100 && hi - lo > 1e-9; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gamma_zero_tail(mid) < relative_tolerance ? hi : lo) = mid;
  }
  return hi;
}

ZeroSumResult sum_gamma_rho(const ZeroTable& zeros, double n, int shift, std::optional<double> height) {
  if (!(n >= 3.0)) throw DomainError("sum_gamma_rho requires N >= 3");
  if (shift != 0 && shift != 1) throw DomainError("sum_gamma_rho shift must be 0 or 1");
  const double t = height.value_or(gamma_sum_cutoff());
  const double log_n = std::log(n);
  const double scale = std::pow(n, 0.5 + shift);
  auto out = conjugate_pair_sum(zeros, t, Exec::serial, [&](double g) {
    const std::complex<double> gam = complex_gamma({0.5, g});
    const double phase = g * log_n;
    return scale * (gam * std::complex<double>(std::cos(phase), std::sin(phase))).real();
  });
  out.tail_estimate = scale * gamma_zero_tail(t);
  return out;
}

ResidualRecord psi_explicit_residual(const LambdaTable& table, const ZeroTable& zeros,
                                     std::uint64_t x, double height) {
  const double xd = static_cast<double>(x);
  const auto sum = sum_rho(zeros, xd, height);
  ResidualRecord rec;
  rec.x = xd;
  rec.truth = remainder(table, x).r;
  rec.formula = -sum.value;
  rec.residual = rec.truth - rec.formula;
  const double log_x = std::log(xd);
  rec.envelope = xd * log_x * std::log(log_x) / height + log_x;
  rec.height = height;
  rec.pairs_used = sum.pairs_used;
  return rec;
}

ResidualRecord psi1_explicit_residual(const LambdaTable& table, const ZeroTable& zeros,
                                      std::uint64_t n, double height) {
  const double nd = static_cast<double>(n);
  const auto sum = sum_rho1(zeros, nd, height);
  ResidualRecord rec;
  rec.x = nd;
  rec.truth = remainder(table, n).r1;
  rec.formula = -sum.value;
  rec.residual = rec.truth - rec.formula;
  rec.envelope = nd;
  rec.height = height;
  rec.pairs_used = sum.pairs_used;
  return rec;
}

ResidualRecord fujii_residual(const LambdaTable& table, const ZeroTable& zeros, std::uint64_t n,
                              double height) {
  const double nd = static_cast<double>(n);
  const auto sum = sum_rho1(zeros, nd, height);
  ResidualRecord rec;
  rec.x = nd;
  rec.truth = big_G(table, n).g;
  rec.formula = 0.5 * nd * nd - 2.0 * sum.value;
  rec.residual = rec.truth - rec.formula;
  const double log_n = std::log(nd);
  rec.envelope = nd * log_n * log_n * log_n;
  rec.alt_envelope = std::pow(nd * log_n, 4.0 / 3.0);
  rec.height = height;
  rec.pairs_used = sum.pairs_used;
  return rec;
}

ResidualRecord smoothed_psi_residual(const LambdaTable& table, const ZeroTable& zeros,
                                     std::uint64_t n, std::optional<double> height) {
  const double nd = static_cast<double>(n);
  const auto avg = smooth_averages(table, n);
  const auto sum = sum_gamma_rho(zeros, nd, 0, height);
  ResidualRecord rec;
  rec.x = nd;
  rec.truth = avg.psi_n;
  rec.formula = nd - sum.value - std::log(2.0 * kPi);
  rec.residual = rec.truth - rec.formula;
  rec.envelope = 1.0 / nd;
  rec.height = sum.height;
  rec.pairs_used = sum.pairs_used;
  return rec;
}

ResidualRecord smooth_residual(const LambdaTable& table, const ZeroTable& zeros, std::uint64_t n,
                               std::optional<double> height) {
  const double nd = static_cast<double>(n);
  const auto avg = smooth_averages(table, n);
  const auto sum = sum_gamma_rho(zeros, nd, 1, height);
  const double dev = avg.psi_n - nd;
  ResidualRecord rec;
  rec.x = nd;
  rec.truth = avg.f_n;
  rec.formula = nd * nd - 2.0 * sum.value + dev * dev;
  rec.residual = rec.truth - rec.formula;
  rec.envelope = nd;
  rec.height = sum.height;
  rec.pairs_used = sum.pairs_used;
  return rec;
}

}  // namespace glab
