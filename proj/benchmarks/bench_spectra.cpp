#include <benchmark/benchmark.h>

#include "casimir/dissipative.hpp"
#include "casimir/modes.hpp"
#include "casimir/oscillator.hpp"
#include "casimir/spectra.hpp"

using namespace casimir;

namespace {

void BM_WindingPolynomial(benchmark::State& state) {
  const ComplexFn f = [](cplx z) { return (z - 0.3) * (z + cplx(0.2, 0.4)) * (z - cplx(0.1, -0.5)); };
  for (auto _ : state) benchmark::DoNotOptimize(winding_count(f, Rect{-1, 1, -1, 1}));
}
BENCHMARK(BM_WindingPolynomial);

void BM_ComplexRoots(benchmark::State& state) {
  DispersionFunction f;
  f.numerator = [](cplx z) { return std::pow(z - cplx(0.2, 0.1), 2) * (z + 0.5) * (z - cplx(-0.1, -0.6)); };
  for (auto _ : state) benchmark::DoNotOptimize(find_complex_modes(f, Rect{-1.03, 1.01, -1.02, 1.04}));
}
BENCHMARK(BM_ComplexRoots);

void BM_QuasiStaticModes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(quasi_static_modes(1e16, 1e14, 5e7, 2e-8));
}
BENCHMARK(BM_QuasiStaticModes);

void BM_PlasmonicPair(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(plasmonic_pair(1e16, 3e-8, 4e7));
}
BENCHMARK(BM_PlasmonicPair);

void BM_OscillatorGroundEnergy(benchmark::State& state) {
  const OscillatorConfig c{1.0, 0.5, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(ground_energy(c));
}
BENCHMARK(BM_OscillatorGroundEnergy);

}  // namespace
