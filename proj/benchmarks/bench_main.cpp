#include <benchmark/benchmark.h>

#include "rinv/generators.hpp"
#include "rinv/gia_select.hpp"
#include "rinv/mss_select.hpp"
#include "rinv/oracle.hpp"
#include "rinv/pietsch.hpp"
#include "rinv/volume_select.hpp"

namespace {

rinv::Matrix gaussian(int n, int m) { return rinv::generate("gaussian", {m, n, 7, ""}); }

void BM_Oracle(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rinv::Matrix a = gaussian(m, m);
  rinv::OracleOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(rinv::best_subset(a, m / 2, rinv::Objective::Smin, opts));
  state.counters["subsets"] = static_cast<double>(rinv::binomial(m, m / 2));
}
BENCHMARK(BM_Oracle)->Arg(10)->Arg(14)->Arg(18)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_VolumeExchange(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rinv::Matrix a = gaussian(m / 2, m);
  for (auto _ : state) benchmark::DoNotOptimize(rinv::volume_exchange_select(a, m / 4, rinv::Weights::uniform(m)));
}
BENCHMARK(BM_VolumeExchange)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Giannopoulos(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rinv::Matrix a = gaussian(m, m);
  for (auto _ : state) benchmark::DoNotOptimize(rinv::giannopoulos_select(a, m / 2));
}
BENCHMARK(BM_Giannopoulos)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_InterlacingGreedy(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rinv::Matrix a = gaussian(m, m);
  for (auto _ : state) benchmark::DoNotOptimize(rinv::interlacing_greedy_select(a, m / 2));
}
BENCHMARK(BM_InterlacingGreedy)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MainTheorem(benchmark::State& state) {
  const rinv::Matrix a = rinv::harmonic_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rinv::main_theorem_select(a, 8));
}
BENCHMARK(BM_MainTheorem)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Pietsch(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rinv::Mat t = gaussian(m, m / 2).dense();
  for (auto _ : state) benchmark::DoNotOptimize(rinv::pietsch_measure(t));
}
BENCHMARK(BM_Pietsch)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
