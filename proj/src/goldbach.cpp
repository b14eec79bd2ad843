#include "glab/goldbach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fft.hpp"
#include "glab/errors.hpp"

namespace glab {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

std::span<const std::uint32_t> prime_powers_upto(const LambdaTable& table, std::uint64_t n) {
  const auto pp = table.prime_powers();
  const auto end = std::upper_bound(pp.begin(), pp.end(), n);
  return pp.first(static_cast<std::size_t>(end - pp.begin()));
}

void check_n(const LambdaTable& table, std::uint64_t n, const char* what) {
  if (n > table.n_max()) {
    throw RangeError(std::string(what) + ": N = " + std::to_string(n) + " exceeds table n_max " +
                     std::to_string(table.n_max()));
  }
}

}  // namespace

Psi2Series psi2_direct(const LambdaTable& table, std::uint64_t n_max, Exec exec) {
  if (n_max > table.n_max()) {
    throw CapacityError("psi2_direct: n_max " + std::to_string(n_max) + " exceeds table n_max " +
                        std::to_string(table.n_max()));
  }
  const auto pp = prime_powers_upto(table, n_max);
  const auto lambda = table.lambda_values();
  std::vector<double> values(n_max + 1, 0.0);

  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < pp.size(); ++i) {
      const std::uint64_t a = pp[i];
      const double la = lambda[a];
      for (std::size_t j = 0; j < pp.size() && a + pp[j] <= n_max; ++j) {
        values[a + pp[j]] += la * lambda[pp[j]];
      }
    }
  } else {
    constexpr std::uint64_t kBlock = std::uint64_t{1} << 14;
    const std::uint64_t blocks = n_max / kBlock + 1;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(blocks); ++blk) {
      const std::uint64_t lo = static_cast<std::uint64_t>(blk) * kBlock;
      const std::uint64_t hi = std::min(lo + kBlock, n_max + 1);
      for (std::size_t i = 0; i < pp.size() && pp[i] < hi; ++i) {
        const std::uint64_t a = pp[i];
        const double la = lambda[a];
        const std::uint64_t from = lo > a ? lo - a : 0;
        auto j = std::lower_bound(pp.begin(), pp.end(), from);
        for (; j != pp.end() && a + *j < hi; ++j) values[a + *j] += la * lambda[*j];
      }
    }
  }

  Psi2Series series;
  series.n_max = n_max;
  series.backend = Psi2Backend::direct;
  const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  series.error_bound = kUnitRoundoff * static_cast<double>(pp.size()) * peak;
  series.values = std::move(values);
  return series;
}

Psi2Series psi2_fft(const LambdaTable& table, std::uint64_t n_max) {
  if (n_max > table.n_max()) {
    throw CapacityError("psi2_fft: n_max " + std::to_string(n_max) + " exceeds table n_max " +
                        std::to_string(table.n_max()));
  }
  const auto lambda = table.lambda_values().first(n_max + 1);
  auto values = fft::self_convolution(lambda, n_max + 1);
  // Lambda vanishes below 2, so the convolution is supported on n >= 4.
  for (std::uint64_t n = 0; n < std::min<std::uint64_t>(4, values.size()); ++n) values[n] = 0.0;
  for (auto& v : values) v = std::max(v, 0.0);

  CompensatedSum sq;
  for (const double v : lambda) sq.add(v * v);
  const double len = static_cast<double>(fft::next_pow2(std::max<std::size_t>(2 * lambda.size(), 2)));

  Psi2Series series;
  series.n_max = n_max;
  series.backend = Psi2Backend::fft;
  series.error_bound = 5.0 * kUnitRoundoff * std::log2(len) * sq.value();
  series.values = std::move(values);
  return series;
}

GoldbachSummary big_G(const LambdaTable& table, std::uint64_t n) {
  check_n(table, n, "big_G");
  const auto lambda = table.lambda_values();
  const auto psi = table.psi_values();
  CompensatedSum acc;
  if (n >= 4) {
    for (const std::uint64_t m : prime_powers_upto(table, n - 2)) acc.add(lambda[m] * psi[n - m]);
  }
  const double nd = static_cast<double>(n);
  const double g = acc.value();
  return {n, g, g - 0.5 * nd * nd};
}

std::vector<GoldbachSummary> big_G_grid(const LambdaTable& table, std::span<const std::uint64_t> ns,
                                        Exec exec) {
  for (const auto n : ns) check_n(table, n, "big_G_grid");
  std::vector<GoldbachSummary> out(ns.size());
  const auto count = static_cast<std::int64_t>(ns.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = big_G(table, ns[static_cast<std::size_t>(i)]);
  return out;
}

double psi20_via_remainder(const LambdaTable& table, std::uint64_t n) {
  check_n(table, n, "psi20_via_remainder");
  const auto lambda = table.lambda_values();
  const auto psi = table.psi_values();
  CompensatedSum acc;
  for (std::uint64_t m = 1; m < n; ++m) {
    const std::uint64_t k = n - m;
    acc.add((lambda[m] - 1.0) * (psi[k] - static_cast<double>(k)));
  }
  return acc.value();
}

Psi20Sums psi20_sum(const LambdaTable& table, std::uint64_t n) {
  if (n < 4) throw DomainError("psi20_sum requires N >= 4");
  const double nd = static_cast<double>(n);
  const double g = big_G(table, n).g;
  CompensatedSum def;
  def.add(g);
  def.add(-2.0 * table.psi1(n));
  def.add(0.5 * nd * (nd - 1.0));
  return {def.value(), psi20_via_remainder(table, n)};
}

Psi20Sums psi20_sum(const LambdaTable& table, const Psi2Series& series, std::uint64_t n) {
  if (n < 4) throw DomainError("psi20_sum requires N >= 4");
  if (n > series.n_max) {
    throw RangeError("psi20_sum: series n_max " + std::to_string(series.n_max) + " below N = " +
                     std::to_string(n));
  }
  check_n(table, n, "psi20_sum");
  const auto psi = table.psi_values();
  CompensatedSum def;
  for (std::uint64_t k = 1; k <= n; ++k) {
    def.add(series.values[k] - 2.0 * psi[k - 1] + static_cast<double>(k - 1));
  }
  return {def.value(), psi20_via_remainder(table, n)};
}

IdentityCheck identity_check(const LambdaTable& table, std::uint64_t n) {
  if (n < 4) throw DomainError("identity_check requires N >= 4");
  IdentityCheck c;
  c.n = n;
  c.g = big_G(table, n).g;
  c.psi1 = table.psi1(n);
  c.psi20 = psi20_via_remainder(table, n);
  const double nd = static_cast<double>(n);
  CompensatedSum rhs;
  rhs.add(2.0 * c.psi1);
  rhs.add(-0.5 * nd * (nd - 1.0));
  rhs.add(c.psi20);
  c.rhs = rhs.value();
  c.residual = c.g - c.rhs;
  return c;
}

std::vector<IdentityCheck> identity_checks(const LambdaTable& table, std::span<const std::uint64_t> ns,
                                       Exec exec) {
  for (const auto n : ns) check_n(table, n, "identity_checks");
  std::vector<IdentityCheck> out(ns.size());
  const auto count = static_cast<std::int64_t>(ns.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = identity_check(table, ns[static_cast<std::size_t>(i)]);
  }
  return out;
}

double smooth_tail_bound(double n, std::uint64_t n_cut) {
  const double c = static_cast<double>(n_cut);
  return n * std::exp(-c / n) * (std::log(c) + 1.0);
}

std::uint64_t smooth_cutoff(double n, double eps) {
  if (!(n >= 3.0)) throw DomainError("smooth averages require N >= 3");
  if (!(eps > 0.0)) throw DomainError("smooth truncation eps must be positive");
  std::uint64_t lo = static_cast<std::uint64_t>(std::ceil(n));
  if (smooth_tail_bound(n, lo) < eps) return lo;
  std::uint64_t hi = lo;
  while (smooth_tail_bound(n, hi) >= eps) {
    if (hi > (std::uint64_t{1} << 61)) throw CapacityError("smooth cutoff diverges");
    lo = hi;
    hi *= 2;
  }
  // bound(lo) >= eps > bound(hi)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (smooth_tail_bound(n, mid) < eps ? hi : lo) = mid;
  }
  return hi;
}

double default_smooth_eps(double n) { return 1e-6 / n; }

SmoothAverages smooth_averages(const LambdaTable& table, std::uint64_t n, std::optional<double> eps,
                               Exec exec) {
  const double nd = static_cast<double>(n);
  const double target = eps.value_or(default_smooth_eps(nd));
  const std::uint64_t n_cut = smooth_cutoff(nd, target);
  if (n_cut > table.n_max()) {
    throw CapacityError("smooth average at N = " + std::to_string(n) + " requires n_cut = " +
                        std::to_string(n_cut) + " but table n_max is " +
                        std::to_string(table.n_max()));
  }
  const auto pp = prime_powers_upto(table, n_cut);
  const auto lambda = table.lambda_values();
  const double psi_n = reduce_sum<double>(
      pp.size(), [&](std::size_t i) { return lambda[pp[i]] * std::exp(-static_cast<double>(pp[i]) / nd); },
      exec);
  return {n, n_cut, psi_n, psi_n * psi_n, smooth_tail_bound(nd, n_cut)};
}

}  // namespace glab
