#include "mzeta/eta.hpp"
#include "mzeta/index.hpp"
#include "mzeta/mzv.hpp"

#include <benchmark/benchmark.h>

using namespace mzeta;

namespace {

EvalConfig config(long cutoff) {
  EvalConfig c;
  c.precision_digits = 30;
  c.cutoff = cutoff;
  c.work_budget = 0;
  return c;
}

void BM_HarmonicProduct(benchmark::State& st) {
  const int depth = static_cast<int>(st.range(0));
  Index a(std::vector<int>(static_cast<std::size_t>(depth), 2));
  Index b(std::vector<int>(static_cast<std::size_t>(depth), 3));
  for (auto _ : st) benchmark::DoNotOptimize(harmonic_product(a, b));
}
BENCHMARK(BM_HarmonicProduct)->DenseRange(1, 5);

void BM_Star(benchmark::State& st) {
  Index k(std::vector<int>(static_cast<std::size_t>(st.range(0)), 1));
  for (auto _ : st) benchmark::DoNotOptimize(star(k));
}
BENCHMARK(BM_Star)->DenseRange(2, 10, 2);

void BM_ZetaFast(benchmark::State& st) {
  EvalConfig cfg = config(10000);
  PrecisionScope ps(working_digits(cfg.precision_digits));
  Index k({1, 1, 2, 3});
  for (auto _ : st) benchmark::DoNotOptimize(zeta_fast(k, cfg));
}
BENCHMARK(BM_ZetaFast)->Unit(benchmark::kMillisecond);

// growth in the cutoff (the complexity fit reports it)
void BM_EtaPartialSum(benchmark::State& st) {
  const long n = st.range(0);
  EvalConfig cfg = config(n);
  PrecisionScope ps(working_digits(cfg.precision_digits));
  SumExpr e = eta_pair_expr(Index({2}), Index({1}));
  for (auto _ : st) benchmark::DoNotOptimize(partial_sum(e, n));
  st.SetComplexityN(n);
}
BENCHMARK(BM_EtaPartialSum)->RangeMultiplier(2)->Range(128, 2048)->Complexity()->Unit(benchmark::kMillisecond);

void BM_EtaExtrapolated(benchmark::State& st) {
  EvalConfig cfg = config(st.range(0));
  PrecisionScope ps(working_digits(cfg.precision_digits));
  for (auto _ : st) benchmark::DoNotOptimize(eta_pair(Index({1}), Index({1}), cfg));
}
BENCHMARK(BM_EtaExtrapolated)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
