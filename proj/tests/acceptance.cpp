// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "glab/circle.hpp"
#include "glab/errors.hpp"
#include "glab/explicit_formula.hpp"
#include "glab/gamma.hpp"
#include "glab/goldbach.hpp"
#include "glab/sieve.hpp"
#include "glab/zeros.hpp"
#include "glab/zfr.hpp"

using namespace glab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool pass = out.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s  %2d  %-34s  %8.2fs (< %gs)  %s%s\n", pass ? "PASS" : "FAIL", id, title, secs, budget_s,
              out.detail.c_str(), in_time ? "" : "  [over time budget]");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Largest constant per decade; returns the largest ratio between consecutive decades.
double worst_decade_ratio(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> maxima;
  int last = -1000;
  for (const auto& [n, c] : points) {
    const int d = static_cast<int>(std::floor(std::log10(n) + 1e-12));
    if (d != last) {
      maxima.push_back(c);
      last = d;
    } else {
      maxima.back() = std::max(maxima.back(), c);
    }
  }
  double worst = 0.0;
  for (std::size_t i = 1; i < maxima.size(); ++i) worst = std::max(worst, maxima[i] / maxima[i - 1]);
  return worst;
}

// Dense scan plus repeated local rescans; shares nothing with the library search.
double scan_min(const std::function<double(double)>& f, double lo, double hi) {
  const int coarse = 200000;
  double step = (hi - lo) / coarse;
  double best_t = lo;
  double best = f(lo);
  for (int i = 1; i <= coarse; ++i) {
    const double t = lo + step * i;
    const double v = f(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  for (int round = 0; round < 6; ++round) {
    const double a = std::max(lo, best_t - 2 * step);
    const double b = std::min(hi, best_t + 2 * step);
    step = (b - a) / 400;
    for (int i = 0; i <= 400; ++i) {
      const double t = a + step * i;
      const double v = f(t);
      if (v < best) {
        best = v;
        best_t = t;
      }
    }
  }
  return best;
}

double omega_oracle(const EtaFamily& eta, double x) {
  const double lx = std::log(x);
  return scan_min([&](double v) { return eta(std::exp(v)) * lx + v; }, 0.0, lx);
}

double varpi_oracle(const EtaFamily& eta, double x) {
  const double lx = std::log(x);
  return scan_min([&](double u) { return eta(u) * lx + u; }, 0.0, std::max(1.0, lx));
}

}  // namespace

int main() {
  const auto setup_start = Clock::now();
  const LambdaTable table = build_lambda(5'000'000);
  const ZeroTable zeros = load_zeros(GLAB_ZEROS_FILE);
  std::printf("setup: Lambda table to %llu, %zu zero ordinates up to %.3f (%.2fs)\n",
              static_cast<unsigned long long>(table.n_max()), zeros.size(), zeros.max_gamma(),
              std::chrono::duration<double>(Clock::now() - setup_start).count());

  std::vector<std::uint64_t> identity_grid(20000 - 3);
  std::iota(identity_grid.begin(), identity_grid.end(), std::uint64_t{4});
  identity_grid.push_back(100000);
  identity_grid.push_back(1000000);

  report(1, "identity G = 2psi1 - ... + sum", 60, [&] {
    const auto checks = identity_checks(table, identity_grid);
    double worst = 0.0;
    bool ok = true;
    for (const auto& c : checks) {
      const double nd = static_cast<double>(c.n);
      const double tol = 1e-8 * std::max(1.0, nd * nd * 1e-6);
      ok = ok && std::abs(c.residual) <= tol;
      worst = std::max(worst, std::abs(c.residual) / tol);
    }
    return Outcome{ok, fmt("%g N, worst |res|/tol = %.3g", static_cast<double>(checks.size()), worst)};
  });

  report(2, "Lambda_0 convolution routes", 60, [&] {
    double worst = 0.0;
    for (const auto n : identity_grid) {
      const auto s = psi20_sum(table, n);
      const double rel = std::abs(s.via_definition - s.via_remainder) / std::max(1.0, std::abs(s.via_definition));
      worst = std::max(worst, rel);
    }
    return Outcome{worst <= 1e-8, fmt("max relative gap %.3g", worst)};
  });

  report(3, "psi2 FFT vs direct", 30, [&] {
    const auto fft = psi2_fft(table, 10000);
    const auto direct = psi2_direct(table, 10000);
    double worst = 0.0;
    for (std::uint64_t n = 0; n <= 10000; ++n) worst = std::max(worst, std::abs(fft[n] - direct[n]));
    return Outcome{worst <= 1e-6, fmt("max |fft - direct| = %.3g", worst)};
  });

  report(4, "contour quadrature", 120, [&] {
    bool ok = true;
    std::string detail;
    for (const auto& [n, tol] : {std::pair<std::uint64_t, double>{10, 1e-8}, {500, 1e-4}}) {
      const auto ctx = make_circle_context(n, 40 * n, std::size_t{1} << 17);
      const double truth = psi20_sum(table, n).via_definition;
      const auto res = contour_psi20(table, ctx);
      const double rel = std::abs(res.value - truth) / std::abs(truth);
      ok = ok && ctx.M >= (std::size_t{1} << 15) && rel <= tol;
      detail += fmt("N=%g rel %.3g", static_cast<double>(n), rel) + fmt(" (M=%g); ", static_cast<double>(ctx.M));
    }
    return Outcome{ok, detail};
  });

  report(5, "Parseval", 60, [&] {
    double worst_rel = 0.0;
    double c = 0.0;
    for (const std::uint64_t n : {16u, 100u, 1000u}) {
      const auto p = parseval_check(table, make_circle_context(n));
      worst_rel = std::max(worst_rel, p.relative_error());
      const double nd = static_cast<double>(n);
      c = std::max(c, p.rhs / (nd * std::log(nd)));
    }
    return Outcome{worst_rel <= 1e-10 && c <= 3.0, fmt("max rel %.3g, fitted c = %.4f", worst_rel, c)};
  });

  report(6, "Fujii residual stability", 300, [&] {
    if (zeros.size() < 100000) {
      return Outcome{false, fmt("only %g zero ordinates", static_cast<double>(zeros.size()))};
    }
    const double height = zeros.max_gamma();
    std::vector<std::pair<double, double>> constants;
    std::string detail;
    for (const std::uint64_t n : {1000u, 10000u, 100000u, 1000000u}) {
      const auto rec = fujii_residual(table, zeros, n, height);
      const double c = std::abs(rec.residual) / rec.envelope;
      if (!std::isfinite(c)) return Outcome{false, "non-finite constant"};
      constants.emplace_back(static_cast<double>(n), c);
      detail += fmt("%.3g ", c);
    }
    const double ratio = worst_decade_ratio(constants);
    return Outcome{ratio <= 3.0, "constants " + detail + fmt("| worst decade ratio %.3f", ratio)};
  });

  report(7, "psi explicit formula", 120, [&] {
    double c = 0.0;
    for (const std::uint64_t x : {1000u, 10000u, 100000u}) {
      for (const double t : {1e2, 1e3, 1e4}) {
        const auto rec = psi_explicit_residual(table, zeros, x, t);
        c = std::max(c, std::abs(rec.residual) / rec.envelope);
      }
    }
    return Outcome{c <= 10.0, fmt("fitted C = %.4f", c)};
  });

  report(8, "smoothed explicit formula", 120, [&] {
    std::vector<std::pair<double, double>> psi_c;
    std::vector<std::pair<double, double>> f_c;
    double scale = 0.0;
    for (const std::uint64_t n : {100u, 1000u, 10000u, 100000u}) {
      const double nd = static_cast<double>(n);
      const auto ps = smoothed_psi_residual(table, zeros, n);
      psi_c.emplace_back(nd, std::abs(ps.residual) * nd);
      const auto f = smooth_residual(table, zeros, n);
      f_c.emplace_back(nd, std::abs(f.residual) / nd);
      scale = std::max(scale, std::abs(f.truth - nd * nd) / (nd * std::sqrt(nd)));
    }
    const double r_psi = worst_decade_ratio(psi_c);
    const double r_f = worst_decade_ratio(f_c);
    const bool ok = r_psi <= 3.0 && r_f <= 3.0 && scale <= 10.0;
    return Outcome{ok, fmt("decade ratios %.3f, %.3f", r_psi, r_f) + fmt("; F scale c = %.4f", scale)};
  });

  report(9, "Gamma kernel", 1, [&] {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double t = 30.0 * i / 49.0;
      const double direct = std::abs(complex_gamma({0.5, t}));
      const double closed = std::sqrt(std::numbers::pi / std::cosh(std::numbers::pi * t));
      worst = std::max(worst, std::abs(direct - closed));
    }
    const double g1 = std::abs(complex_gamma(1.0) - 1.0);
    const double gh = std::abs(complex_gamma(0.5) - std::sqrt(std::numbers::pi));
    return Outcome{worst <= 1e-10 && g1 <= 1e-12 && gh <= 1e-12,
                   fmt("max modulus gap %.3g", worst) + fmt(", Gamma(1), Gamma(1/2) errors %.2g %.2g", g1, gh)};
  });

  report(10, "omega / varpi minimizers", 10, [&] {
    bool ok = true;
    double closed_gap = 0.0;
    for (const double theta : {0.05, 0.25, 0.5}) {
      const auto eta = EtaFamily::constant(theta);
      for (const double x : {1e3, 1e6, 1e12}) {
        const double expected = theta * std::log(x);
        closed_gap = std::max(closed_gap, std::abs(omega(eta, x).value - expected) / expected);
        closed_gap = std::max(closed_gap, std::abs(varpi(eta, x).value - expected) / expected);
      }
    }
    ok = ok && closed_gap <= 1e-12;

    double oracle_gap = 0.0;
    const std::vector<EtaFamily> families = {EtaFamily::logpower(1.0, 1.0, 0.0),
                                             EtaFamily::logpower(1.0, 2.0 / 3.0, 1.0 / 3.0),
                                             EtaFamily::logpower(0.5, 0.5, 1.0)};
    for (const auto& eta : families) {
      for (const double x : {1e3, 1e6, 1e12}) {
        const double o = omega_oracle(eta, x);
        const double p = varpi_oracle(eta, x);
        oracle_gap = std::max(oracle_gap, std::abs(omega(eta, x).value - o) / std::max(1.0, o));
        oracle_gap = std::max(oracle_gap, std::abs(varpi(eta, x).value - p) / std::max(1.0, p));
      }
    }
    ok = ok && oracle_gap <= 1e-6;

    double crit_gap = 0.0;
    for (const auto& eta : families) {
      const double u_min = omega(eta, 1e8).u_star;
      const double u_crit = critical_point(eta, 1e8);
      crit_gap = std::max(crit_gap, std::abs(u_crit - u_min) / u_min);
    }
    ok = ok && crit_gap <= 1e-3;

    std::string ratios;
    for (const auto& [a, b] : {std::pair{1.0, 0.0}, std::pair{2.0 / 3.0, 1.0 / 3.0}}) {
      const double ratio = omega_asymptotic(1.0, a, b, 1e12) / omega(EtaFamily::logpower(1.0, a, b), 1e12).value;
      ok = ok && ratio >= 0.6 && ratio <= 1.4;
      ratios += fmt(" %.4f", ratio);
    }
    return Outcome{ok, fmt("closed %.2g, oracle %.2g", closed_gap, oracle_gap) + fmt(", critical %.2g", crit_gap) +
                           ", asymptotic ratios" + ratios};
  });

  report(11, "transfer arithmetic", 5, [&] {
    bool ok = true;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::size_t checks = 0;
    // Families inside the region bounds 0 < eta <= 1/2.
    const double c_23 = 0.5 / EtaFamily::logpower(1.0, 2.0 / 3.0, 1.0 / 3.0)(0.0);
    const std::vector<EtaFamily> families = {EtaFamily::logpower(0.5, 1.0, 0.0),
                                             EtaFamily::logpower(c_23, 2.0 / 3.0, 1.0 / 3.0),
                                             EtaFamily::constant(0.25), EtaFamily::constant(0.5)};
    for (const auto& eta : families) {
      double prev = -std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 100; ++i) {
        const double x = std::pow(10.0, 2.0 + 10.0 * i / 100.0);
        const double mono = std::log(x) - varpi(eta, x).value;
        ok = ok && mono >= prev - 1e-9;
        prev = mono;
        for (const double A : {1.5, 2.0, 5.0}) {
          const double lhs = varpi(eta, std::pow(x / 2.0, 1.0 / A)).value;
          const double rhs = varpi(eta, x / 2.0).value / A;
          ok = ok && lhs >= rhs - 1e-9 * std::max(1.0, rhs);
          worst_slack = std::min(worst_slack, lhs - rhs);
          ++checks;
        }
      }
    }
    return Outcome{ok, fmt("%g root checks, min slack %.3g", static_cast<double>(checks), worst_slack)};
  });

  report(12, "R1 oscillation scale", 30, [&] {
    double best = 0.0;
    double best_upper = 0.0;
    for (std::uint64_t n = 1; n <= 1000000; ++n) {
      const double nd = static_cast<double>(n);
      const double c = std::abs(remainder(table, n).r1) / (nd * std::sqrt(nd));
      best = std::max(best, c);
      if (n >= 100000) best_upper = std::max(best_upper, c);
    }
    return Outcome{best >= 0.01, fmt("max over N <= 1e6: %.4g; over [1e5, 1e6]: %.4g", best, best_upper)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
