#include <benchmark/benchmark.h>

#include "cknsym/constants.hpp"
#include "cknsym/oracle.hpp"
#include "cknsym/regions.hpp"
#include "cknsym/root_solver.hpp"
#include "cknsym/special_functions.hpp"
#include "cknsym/sweep.hpp"

namespace {

void BM_LogGamma(benchmark::State& state) {
  double z = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cknsym::log_gamma(z));
    z = z < 200.0 ? z * 1.01 : 0.25;
  }
}
BENCHMARK(BM_LogGamma);

void BM_Digamma(benchmark::State& state) {
  double z = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cknsym::digamma(z));
    z = z < 200.0 ? z * 1.01 : 0.25;
  }
}
BENCHMARK(BM_Digamma);

void BM_KStarCkn(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cknsym::k_star_ckn(0.5, 2.4, 1.0));
}
BENCHMARK(BM_KStarCkn);

void BM_XStar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cknsym::x_star(0.5, 2.4).root);
}
BENCHMARK(BM_XStar);

void BM_Lambda1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cknsym::lambda_1(0.5, 2.4, 5));
}
BENCHMARK(BM_Lambda1)->Unit(benchmark::kMicrosecond);

void BM_Lambda0(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cknsym::lambda_0(1.5, 3));
}
BENCHMARK(BM_Lambda0);

void BM_KStarOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cknsym::k_star_oracle(0.7, 3.0, 1.0));
}
BENCHMARK(BM_KStarOracle)->Unit(benchmark::kMillisecond);

void BM_CurveCkn(benchmark::State& state) {
  cknsym::CknCurveOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cknsym::ckn_curve(opts).size());
}
BENCHMARK(BM_CurveCkn)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
