#include <benchmark/benchmark.h>

#include "memsat/dmm.hpp"
#include "memsat/walksat.hpp"
#include "memsat/xorsat.hpp"

namespace {

memsat::CnfFormula delta_instance(std::size_t n) {
  return memsat::expand_instance(memsat::generate_balanced_xorsat(n, memsat::kDeltaRhoXor, 1));
}

void BM_DmmDerivatives(benchmark::State& state) {
  const auto f = delta_instance(static_cast<std::size_t>(state.range(0)));
  memsat::DmmParams p;
  memsat::DmmIntegrator integ(f, p);
  const auto s = memsat::initial_state(f, 3);
  for (auto _ : state) {
    integ.derivatives(s);
    benchmark::DoNotOptimize(integ.dv().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.n_clauses()));
}
BENCHMARK(BM_DmmDerivatives)->RangeMultiplier(2)->Range(250, 4000);

void BM_DmmStep(benchmark::State& state) {
  const auto f = delta_instance(static_cast<std::size_t>(state.range(0)));
  memsat::DmmParams p;
  memsat::DmmIntegrator integ(f, p);
  auto s = memsat::initial_state(f, 3);
  for (auto _ : state) integ.step(s);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.n_clauses()));
}
BENCHMARK(BM_DmmStep)->RangeMultiplier(2)->Range(250, 4000);

void BM_UnsatCount(benchmark::State& state) {
  const auto f = delta_instance(static_cast<std::size_t>(state.range(0)));
  memsat::DmmParams p;
  memsat::DmmIntegrator integ(f, p);
  const auto s = memsat::initial_state(f, 3);
  for (auto _ : state) benchmark::DoNotOptimize(integ.unsat_count(s.v));
}
BENCHMARK(BM_UnsatCount)->RangeMultiplier(2)->Range(250, 4000);

void BM_SlsFlips(benchmark::State& state) {
  const auto f = delta_instance(static_cast<std::size_t>(state.range(0)));
  memsat::SlsParams p;
  p.max_flips = 100000;
  p.max_restarts = 1;
  p.threshold_fraction = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(memsat::solve_sls(f, p).best_unsat);
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SlsFlips)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
