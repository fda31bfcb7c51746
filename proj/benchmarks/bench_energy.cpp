#include <benchmark/benchmark.h>

#include "casimir/friction.hpp"
#include "casimir/lifshitz.hpp"

using namespace casimir;

namespace {

CavityConfig plasma_cavity(double L, double T) {
  CavityConfig c;
  const auto m = PermittivityModel::plasma(1.37e16);
  c.plate1 = m;
  c.plate2 = m;
  c.L = L;
  c.T = T;
  return c;
}

void BM_LifshitzZeroT(benchmark::State& state) {
  const auto c = plasma_cavity(1e-7, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(lifshitz_free_energy(c));
}
BENCHMARK(BM_LifshitzZeroT)->Unit(benchmark::kMillisecond);

// The number of Matsubara terms grows like 1 / (L T).
void BM_LifshitzMatsubara(benchmark::State& state) {
  const auto c = plasma_cavity(1e-6, double(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lifshitz_free_energy(c));
}
BENCHMARK(BM_LifshitzMatsubara)->Arg(30)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_FrictionPoint(benchmark::State& state) {
  MovingAtomConfig c;
  c.alpha0 = 1e-40;
  c.v = 300.0;
  c.z_a = 1e-9;
  c.substrate = PermittivityModel::drude(1e15, 1e14);
  const auto in = builtin_inputs(c);
  for (auto _ : state) benchmark::DoNotOptimize(friction_force_general(c, in));
}
BENCHMARK(BM_FrictionPoint)->Unit(benchmark::kMillisecond);

}  // namespace
