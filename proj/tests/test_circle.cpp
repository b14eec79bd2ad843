#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "glab/circle.hpp"
#include "glab/errors.hpp"
#include "glab/goldbach.hpp"
#include "oracles.hpp"

using namespace glab;
using cd = std::complex<double>;

namespace {

const LambdaTable& table() {
  static const LambdaTable t = build_lambda(41000);
  return t;
}

}  // namespace

TEST_CASE("context defaults and aliasing guard") {
  const auto ctx = make_circle_context(500);
  CHECK(ctx.r == std::exp(-1.0 / 500.0));
  CHECK(ctx.n_cut == 20000);
  CHECK(ctx.M == 131072);
  CHECK(ctx.M > 2 * ctx.n_cut);
  CHECK(make_circle_context(10, 400, 1024).M == 1024);
  CHECK_THROWS_AS(make_circle_context(10, 400, 800), AliasingError);
  CHECK_THROWS_AS(make_circle_context(10, 400, 1000), AliasingError);
  CHECK_THROWS_AS(make_circle_context(10, 512, 1024), AliasingError);
  CHECK_THROWS_AS(make_circle_context(3), DomainError);
  CHECK_THROWS_AS(make_circle_context(100, 50), DomainError);
}

TEST_CASE("kernels") {
  CHECK(kernel_K(0.5, 3) == cd(14.0, 0.0));
  CHECK(kernel_K_direct(0.5, 3) == cd(14.0, 0.0));
  CHECK(kernel_I(0.5) == cd(1.0, 0.0));
  for (std::uint64_t n = 1; n <= 64; ++n) {
    for (const double alpha : {0.0, 0.013, 0.25, 0.5, 0.77}) {
      const cd z = std::polar(std::exp(-1.0 / static_cast<double>(n)), 2.0 * std::numbers::pi * alpha);
      const cd closed = kernel_K(z, n);
      CHECK(std::abs(closed - kernel_K_direct(z, n)) <= 1e-12 * std::abs(closed));
    }
  }
  const auto ctx = make_circle_context(64);
  for (const double alpha : {0.0, 0.1, 0.49}) {
    const auto kv = eval_kernel(ctx, alpha);
    CHECK(std::abs(kv.K - kernel_K_direct(ctx.z(alpha), 64)) <= 1e-12 * std::abs(kv.K));
    CHECK(std::abs(kv.I - kernel_I(ctx.z(alpha))) <= 1e-15 * std::abs(kv.I));
  }
}

TEST_CASE("kernel bound constants") {
  for (const std::uint64_t n : {10u, 100u, 1000u}) {
    const auto fit = fit_kernel_bound(make_circle_context(n), 20000);
    CHECK(fit.c1 <= 3.0);
    // sup |K| |1 - z| = r^{-N} (1 + r^N) = e + 1, reached where z^N is negative real.
    CHECK(fit.c2 <= std::numbers::e + 1.0 + 1e-9);
    CHECK(fit.c2 >= std::numbers::e + 1.0 - 0.05);
  }
}

TEST_CASE("Psi on the circle") {
  const auto ctx = make_circle_context(200);
  const auto at0 = eval_psi_z(table(), ctx, 0.0);
  CHECK(at0.value.imag() == 0.0);
  CHECK(at0.value.real() == doctest::Approx(smooth_averages(table(), 200, 1e-15).psi_n).epsilon(1e-12));
  CHECK(at0.tail_bound < 1e-12);

  const auto half = eval_psi_z(table(), ctx, 0.5);
  CHECK(std::abs(half.value.imag()) <= 1e-10 * std::abs(half.value));
  long double alt = 0;
  for (std::uint64_t n = 1; n <= ctx.n_cut; ++n) {
    alt += oracle::lambda(n) * std::pow(-ctx.r, static_cast<double>(n));
  }
  CHECK(half.value.real() == doctest::Approx(static_cast<double>(alt)).epsilon(1e-11));

  for (const double alpha : {0.1, 0.3, 0.4999}) {
    const auto a = eval_psi_z(table(), ctx, alpha).value;
    const auto b = eval_psi_z(table(), ctx, 1.0 - alpha).value;
    CHECK(std::abs(a - std::conj(b)) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
  CHECK_THROWS_AS(eval_psi_z(table(), ctx, 1.0), DomainError);
  CHECK_THROWS_AS(eval_psi_z(table(), make_circle_context(2000), 0.0), CapacityError);
}

TEST_CASE("tail bound") {
  const double r = std::exp(-1.0 / 50.0);
  long double direct = 0;
  for (std::uint64_t n = 101; n < 20000; ++n) direct += std::log(static_cast<double>(n)) * std::pow(r, n);
  CHECK(log_weighted_tail(r, 100) >= static_cast<double>(direct));
  CHECK(log_weighted_tail(r, 100) <= 2.0 * static_cast<double>(direct));
}

TEST_CASE("contour quadrature reproduces the psi_2^0 sum") {
  const auto lam = oracle::lambda_table(10);
  const auto ctx10 = make_circle_context(10);
  const double brute = oracle::psi20_total(lam, 10);
  const auto fft10 = contour_psi20(table(), ctx10);
  CHECK(std::abs(fft10.value - brute) <= 1e-8 * std::abs(brute));
  CHECK(std::abs(fft10.imag) <= 1e-8 * std::abs(fft10.value));
  const auto direct10 = contour_psi20(table(), ctx10, ContourBackend::direct, Exec::serial);
  CHECK(std::abs(direct10.value - brute) <= 1e-8 * std::abs(brute));
  CHECK(direct10.backend == ContourBackend::direct);

  for (const std::uint64_t n : {50u, 200u, 500u}) {
    CAPTURE(n);
    const auto ctx = make_circle_context(n, std::nullopt, std::size_t{1} << 16);
    const double truth = psi20_sum(table(), n).via_definition;
    const auto res = contour_psi20(table(), ctx);
    CHECK(std::abs(res.value - truth) <= 1e-4 * std::abs(truth));
    CHECK(std::abs(res.imag) <= 1e-8 * std::abs(res.value));
    CHECK(res.M == ctx.M);
    CHECK(res.n_cut == ctx.n_cut);
  }
  const auto ctx50 = make_circle_context(50);
  const auto fft50 = contour_psi20(table(), ctx50);
  const auto par50 = contour_psi20(table(), ctx50, ContourBackend::direct, Exec::parallel);
  const auto ser50 = contour_psi20(table(), ctx50, ContourBackend::direct, Exec::serial);
  CHECK(par50.value == ser50.value);
  CHECK(par50.value == doctest::Approx(fft50.value).epsilon(1e-9));
}

TEST_CASE("Parseval") {
  for (const std::uint64_t n : {16u, 100u, 1000u}) {
    const auto ctx = make_circle_context(n);
    const auto p = parseval_check(table(), ctx);
    CHECK(p.relative_error() <= 1e-10);
    const double nd = static_cast<double>(n);
    CHECK(p.rhs <= 3.0 * nd * std::log(nd));
  }
  CHECK(parseval_check(table(), make_circle_context(16)).relative_error() <= 1e-12);

  std::vector<double> single(40, 0.0);
  single[7] = -0.75;
  const auto one = parseval_check(single, 64);
  CHECK(one.lhs == one.rhs);
  CHECK(one.rhs == 0.5625);
  CHECK_THROWS_AS(parseval_check(single, 32), AliasingError);
}

TEST_CASE("monomials average to the constant-term selector") {
  const std::size_t M = 64;
  for (int l = -static_cast<int>(M) / 2 + 1; l <= static_cast<int>(M) / 2 - 1; ++l) {
    const auto avg = circle_average(M, 1.0, [l](cd z) { return std::pow(z, l + 1); });
    const double expected = l == -1 ? 1.0 : 0.0;
    CAPTURE(l);
    CHECK(std::abs(avg - expected) <= 1e-12);
  }
}

TEST_CASE("|1 - z| profile") {
  for (const std::uint64_t n : {10u, 100u, 1000u}) {
    const auto ctx = make_circle_context(n);
    const auto prof = one_minus_z_profile(ctx, 5000);
    CHECK(prof.front().alpha == 0.0);
    CHECK(prof.back().alpha == 0.5);
    CHECK(prof.front().modulus == doctest::Approx(1.0 - ctx.r).epsilon(1e-14));
    CHECK(prof.back().modulus == doctest::Approx(1.0 + ctx.r).epsilon(1e-15));
    CHECK(prof.back().ratio == doctest::Approx(2.0 * (1.0 + ctx.r)).epsilon(1e-15));
    for (const auto& p : prof) {
      CHECK(p.ratio >= 0.25);
      CHECK(p.ratio <= 8.0);
      CHECK(std::abs(p.identity_residual) <= 1e-15 * std::max(1.0, p.modulus * p.modulus));
    }
  }
}

TEST_CASE("arc split adds up") {
  const auto ctx = make_circle_context(100);
  const auto total = contour_psi20(table(), ctx);
  const auto split = arc_split(table(), ctx, 0.05);
  CHECK((split.major + split.minor).real() == doctest::Approx(total.value).epsilon(1e-10));
  CHECK(split.major_nodes > 0);
  CHECK(split.major_nodes < ctx.M);
  CHECK_THROWS_AS(arc_split(table(), ctx, 0.0), DomainError);
}
