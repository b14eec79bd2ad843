// Serial reference kernels against their OpenMP counterparts.
// Arg 0 selects Exec::serial, 1 selects Exec::parallel.

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "glab/circle.hpp"
#include "glab/explicit_formula.hpp"
#include "glab/goldbach.hpp"
#include "glab/sieve.hpp"
#include "glab/zeros.hpp"

using namespace glab;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

const LambdaTable& table() {
  static const LambdaTable t = build_lambda(2'000'000);
  return t;
}

const ZeroTable& zeros() {
  static const ZeroTable t = load_zeros(GLAB_ZEROS_FILE, ZeroLimit::count(20000));
  return t;
}

void BM_Sieve(benchmark::State& state) {
  SieveOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(build_lambda(2'000'000, opts));
}
BENCHMARK(BM_Sieve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Psi2Direct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(psi2_direct(table(), 20000, exec_of(state)));
}
BENCHMARK(BM_Psi2Direct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Psi2Fft(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(psi2_fft(table(), 20000));
}
BENCHMARK(BM_Psi2Fft)->Unit(benchmark::kMillisecond);

void BM_ZeroSum(benchmark::State& state) {
  const double height = zeros().max_gamma();
  for (auto _ : state) benchmark::DoNotOptimize(sum_rho1(zeros(), 1e6, height, exec_of(state)));
}
BENCHMARK(BM_ZeroSum)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_IdentityGrid(benchmark::State& state) {
  std::vector<std::uint64_t> grid(5000);
  std::iota(grid.begin(), grid.end(), std::uint64_t{4});
  for (auto _ : state) benchmark::DoNotOptimize(identity_checks(table(), grid, exec_of(state)));
}
BENCHMARK(BM_IdentityGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ContourDirect(benchmark::State& state) {
  const auto ctx = make_circle_context(200);
  for (auto _ : state) benchmark::DoNotOptimize(contour_psi20(table(), ctx, ContourBackend::direct, exec_of(state)));
}
BENCHMARK(BM_ContourDirect)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ContourFft(benchmark::State& state) {
  const auto ctx = make_circle_context(200);
  for (auto _ : state) benchmark::DoNotOptimize(contour_psi20(table(), ctx, ContourBackend::fft));
}
BENCHMARK(BM_ContourFft)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
