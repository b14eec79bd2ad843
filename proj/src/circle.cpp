#include "glab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "glab/errors.hpp"

namespace glab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::complex<double>> unit_roots(std::size_t M) {
  std::vector<std::complex<double>> roots(M);
  for (std::size_t j = 0; j < M; ++j) {
    roots[j] = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(M));
  }
  return roots;
}

void check_table(const LambdaTable& table, const CircleContext& ctx) {
  if (table.n_max() < ctx.n_cut) {
    throw CapacityError("circle sums need Lambda up to n_cut = " + std::to_string(ctx.n_cut) +
                        ", table n_max is " + std::to_string(table.n_max()));
  }
}

// Lambda_0(n) r^n for 0 <= n <= n_cut, with the n = 0 slot empty.
std::vector<double> lambda0_coefficients(const LambdaTable& table, const CircleContext& ctx) {
  check_table(table, ctx);
  const auto lambda = table.lambda_values();
  std::vector<double> c(ctx.n_cut + 1, 0.0);
  const double log_r = std::log(ctx.r);
  for (std::uint64_t n = 1; n <= ctx.n_cut; ++n) {
    c[n] = (lambda[n] - 1.0) * std::exp(static_cast<double>(n) * log_r);
  }
  return c;
}

// K_N at node j from the exact phase of z^N.
std::complex<double> kernel_at_node(const CircleContext& ctx, const std::vector<std::complex<double>>& roots,
                                    std::size_t j) {
  const std::complex<double> z = ctx.r * roots[j];
  const auto wN = roots[(ctx.N % ctx.M) * j % ctx.M];
  const double rN = std::pow(ctx.r, static_cast<double>(ctx.N));
  return std::conj(wN) / rN * (1.0 - rN * wN) / (1.0 - z);
}

// (Psi - I)(z_j) at every node, by FFT or direct summation.
std::vector<std::complex<double>> psi_minus_i_samples(const LambdaTable& table, const CircleContext& ctx,
                                                      ContourBackend backend,
                                                      const std::vector<std::complex<double>>& roots,
                                                      Exec exec) {
  if (backend == ContourBackend::fft) {
    const auto c = lambda0_coefficients(table, ctx);
    return fft::sample_on_circle(c, ctx.M);
  }
  check_table(table, ctx);
  const auto pp = table.prime_powers();
  const auto end = std::upper_bound(pp.begin(), pp.end(), ctx.n_cut);
  const std::size_t count = static_cast<std::size_t>(end - pp.begin());
  std::vector<double> w(count);
  const double log_r = std::log(ctx.r);
  for (std::size_t i = 0; i < count; ++i) {
    w[i] = table.lambda_values()[pp[i]] * std::exp(static_cast<double>(pp[i]) * log_r);
  }
  std::vector<std::complex<double>> out(ctx.M);
  const auto M = static_cast<std::int64_t>(ctx.M);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t jj = 0; jj < M; ++jj) {
    const auto j = static_cast<std::uint64_t>(jj);
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += w[i] * roots[pp[i] * j % ctx.M];
    out[j] = s - kernel_I(ctx.r * roots[j]);
  }
  return out;
}

}  // namespace

std::complex<double> CircleContext::z(double alpha) const { return std::polar(r, kTwoPi * alpha); }

CircleContext make_circle_context(std::uint64_t N, std::optional<std::uint64_t> n_cut,
                                  std::optional<std::size_t> M) {
  if (N < 4) throw DomainError("circle context requires N >= 4");
  CircleContext ctx;
  ctx.N = N;
  ctx.r = std::exp(-1.0 / static_cast<double>(N));
  ctx.n_cut = n_cut.value_or(kDefaultCutFactor * N);
  if (ctx.n_cut < N) throw DomainError("n_cut must be at least N");
  ctx.M = M.value_or(2 * fft::next_pow2(2 * ctx.n_cut));
  if (ctx.M == 0 || (ctx.M & (ctx.M - 1)) != 0) {
    throw AliasingError("quadrature size M = " + std::to_string(ctx.M) + " is not a power of two");
  }
  if (ctx.M <= 2 * ctx.n_cut) {
    throw AliasingError("quadrature size M = " + std::to_string(ctx.M) + " must exceed 2 n_cut = " +
                        std::to_string(2 * ctx.n_cut));
  }
  return ctx;
}

double log_weighted_tail(double r, std::uint64_t n_cut) {
  const double n0 = static_cast<double>(n_cut + 1);
  const double q = 1.0 - r;
  return std::pow(r, n0) * (std::log(n0) / q + r / (n0 * q * q));
}

SeriesValue eval_psi_z(const LambdaTable& table, const CircleContext& ctx, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
  check_table(table, ctx);
  const auto lambda = table.lambda_values();
  const double log_r = std::log(ctx.r);
  CompensatedComplexSum acc;
  for (const std::uint64_t n : table.prime_powers()) {
    if (n > ctx.n_cut) break;
    const double frac = std::fmod(static_cast<double>(n) * alpha, 1.0);
    acc.add(std::polar(lambda[n] * std::exp(static_cast<double>(n) * log_r), kTwoPi * frac));
  }
  return {acc.value(), log_weighted_tail(ctx.r, ctx.n_cut)};
}

std::complex<double> kernel_I(std::complex<double> z) { return z / (1.0 - z); }

std::complex<double> kernel_K(std::complex<double> z, std::uint64_t N) {
  const std::complex<double> zN = std::pow(z, static_cast<int>(N));
  return (1.0 - zN) / (zN * (1.0 - z));
}

std::complex<double> kernel_K_direct(std::complex<double> z, std::uint64_t N) {
  const std::complex<double> inv = 1.0 / z;
  std::complex<double> term = 1.0;
  std::complex<double> sum = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    term *= inv;
    sum += term;
  }
  return sum;
}

KernelValues eval_kernel(const CircleContext& ctx, double alpha) {
  const auto z = ctx.z(alpha);
  const double rN = std::pow(ctx.r, static_cast<double>(ctx.N));
  const auto wN = std::polar(1.0, kTwoPi * std::fmod(static_cast<double>(ctx.N) * alpha, 1.0));
  return {kernel_I(z), std::conj(wN) / rN * (1.0 - rN * wN) / (1.0 - z)};
}

KernelBoundFit fit_kernel_bound(const CircleContext& ctx, std::size_t points) {
  KernelBoundFit fit;
  const double N = static_cast<double>(ctx.N);
  for (std::size_t j = 0; j < points; ++j) {
    const double alpha = static_cast<double>(j) / static_cast<double>(points);
    const double k = std::abs(eval_kernel(ctx, alpha).K);
    fit.c1 = std::max(fit.c1, k / N);
    fit.c2 = std::max(fit.c2, k * std::abs(1.0 - ctx.z(alpha)));
  }
  return fit;
}

std::complex<double> circle_average(std::size_t M, double radius,
                                    const std::function<std::complex<double>(std::complex<double>)>& f,
                                    Exec exec) {
  if (M == 0) throw DomainError("circle_average needs M >= 1");
  const auto sum = reduce_sum<std::complex<double>>(
      M,
      [&](std::size_t j) {
        return f(std::polar(radius, kTwoPi * static_cast<double>(j) / static_cast<double>(M)));
      },
      exec);
  return sum / static_cast<double>(M);
}

ContourResult contour_psi20(const LambdaTable& table, const CircleContext& ctx, ContourBackend backend,
                            Exec exec) {
  if (ctx.M <= 2 * ctx.n_cut) throw AliasingError("quadrature size must exceed 2 n_cut");
  const auto roots = unit_roots(ctx.M);
  const auto x = psi_minus_i_samples(table, ctx, backend, roots, exec);
  const auto sum = reduce_sum<std::complex<double>>(
      ctx.M, [&](std::size_t j) { return x[j] * x[j] * kernel_at_node(ctx, roots, j); }, exec);
  const auto avg = sum / static_cast<double>(ctx.M);
  return {avg.real(), avg.imag(), ctx.N, ctx.n_cut, ctx.M, backend};
}

double ParsevalResult::relative_error() const {
  const double diff = std::abs(lhs - rhs);
  return rhs != 0.0 ? diff / std::abs(rhs) : diff;
}

ParsevalResult parseval_check(const LambdaTable& table, const CircleContext& ctx) {
  if (ctx.M <= 2 * ctx.n_cut) throw AliasingError("quadrature size must exceed 2 n_cut");
  return parseval_check(lambda0_coefficients(table, ctx), ctx.M);
}

ParsevalResult parseval_check(std::span<const double> coeffs, std::size_t M) {
  if (coeffs.size() > M) {
    throw AliasingError("Parseval check needs M >= " + std::to_string(coeffs.size()) + " nodes");
  }
  const auto x = fft::sample_on_circle(coeffs, M);
  ParsevalResult res;
  res.lhs = reduce_sum<double>(M, [&](std::size_t j) { return std::norm(x[j]); }, Exec::parallel) /
            static_cast<double>(M);
  CompensatedSum rhs;
  for (const double c : coeffs) rhs.add(c * c);
  res.rhs = rhs.value();
  return res;
}

std::vector<ProfilePoint> one_minus_z_profile(const CircleContext& ctx, std::size_t points) {
  if (points == 0) throw DomainError("profile needs at least one interval");
  std::vector<ProfilePoint> out(points + 1);
  const double inv_n = 1.0 / static_cast<double>(ctx.N);
  for (std::size_t i = 0; i <= points; ++i) {
    auto& p = out[i];
    p.alpha = 0.5 * static_cast<double>(i) / static_cast<double>(points);
    const auto one_minus_z = 1.0 - ctx.z(p.alpha);
    p.modulus = std::abs(one_minus_z);
    p.ratio = p.modulus / std::max(inv_n, p.alpha);
    const double s = std::sin(std::numbers::pi * p.alpha);
    p.identity_residual = std::norm(one_minus_z) - (1.0 - ctx.r) * (1.0 - ctx.r) - 4.0 * ctx.r * s * s;
  }
  return out;
}

ArcSplit arc_split(const LambdaTable& table, const CircleContext& ctx, double delta) {
  if (!(delta > 0.0)) throw DomainError("arc split width must be positive");
  const auto roots = unit_roots(ctx.M);
  const auto x = psi_minus_i_samples(table, ctx, ContourBackend::fft, roots, Exec::parallel);
  CompensatedComplexSum major;
  CompensatedComplexSum minor;
  ArcSplit out;
  out.delta = delta;
  for (std::size_t j = 0; j < ctx.M; ++j) {
    const double alpha = static_cast<double>(j) / static_cast<double>(ctx.M);
    const auto term = x[j] * x[j] * kernel_at_node(ctx, roots, j);
    if (std::min(alpha, 1.0 - alpha) <= delta) {
      major.add(term);
      ++out.major_nodes;
    } else {
      minor.add(term);
    }
  }
  out.major = major.value() / static_cast<double>(ctx.M);
  out.minor = minor.value() / static_cast<double>(ctx.M);
  return out;
}

}  // namespace glab
