#include <benchmark/benchmark.h>

#include "casimir/reflection.hpp"

using namespace casimir;

namespace {

const auto gold = PermittivityModel::drude(1.37e16, 5.32e13);
const auto silicon = PermittivityModel::constant(11.7);

void BM_Fresnel(benchmark::State& state) {
  double w = 1e15;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fresnel(Polarization::TM, w, 2e7, gold, 0.0));
    w += 1.0;
  }
}
BENCHMARK(BM_Fresnel);

void BM_BlochSuperlattice(benchmark::State& state) {
  const auto st = LayerStack::superlattice(gold, 20e-9, silicon, 20e-9);
  for (auto _ : state) benchmark::DoNotOptimize(stack_reflection(Polarization::TM, 3e14, 5e7, st, 0.0));
}
BENCHMARK(BM_BlochSuperlattice);

// Cost of the explicit stack grows with the number of periods.
void BM_FiniteStack(benchmark::State& state) {
  const auto st = LayerStack::finite_superlattice(gold, 20e-9, silicon, 20e-9, int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stack_reflection(Polarization::TM, 3e14, 5e7, st, 0.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FiniteStack)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oN);

}  // namespace
