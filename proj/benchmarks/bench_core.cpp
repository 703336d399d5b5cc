#include <benchmark/benchmark.h>

#include "cavqed/config.hpp"
#include "cavqed/dynamics.hpp"
#include "cavqed/observables.hpp"
#include "cavqed/presets.hpp"

using namespace cavqed;

namespace {

// Benzene cavity with a photon window trimmed to the requested mode count.
CoupledSystem benzene(std::size_t modes) {
  RunConfig c = find_preset("fig1d-iii").config;
  const double half = 0.5 * c.cavity.spacing * static_cast<double>(modes - 1);
  c.cavity.omega_min = c.cavity.omega_c - half;
  c.cavity.omega_max = c.cavity.omega_c + half;
  return assemble(c.levels, make_grid(c));
}

CoupledSystem toluene(std::size_t modes) {
  RunConfig c = find_preset("fig3-iii").config;
  c.cavity.spacing = (c.cavity.omega_max - c.cavity.omega_min) / static_cast<double>(modes - 1);
  return assemble(c.levels, make_grid(c));
}

void BM_StructuredSolve(benchmark::State& state) {
  const auto sys = toluene(static_cast<std::size_t>(state.range(0)));
  SolverOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(eigensolve_structured(sys, opts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StructuredSolve)->RangeMultiplier(4)->Range(1024, 16384)->Unit(benchmark::kMillisecond)->Complexity();

void BM_DenseSolve(benchmark::State& state) {
  const auto sys = benzene(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigensolve_dense(sys));
}
BENCHMARK(BM_DenseSolve)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Absorption(benchmark::State& state) {
  const auto sys = toluene(4001);
  const auto modes = eigensolve_structured(sys);
  const auto& c = find_preset("fig3-iii").config;
  const auto omega = uniform_grid(6.45, 6.85, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(absorption_spectrum(modes, c.levels, 0.001, omega, {1, 0, 0}, 1));
}
BENCHMARK(BM_Absorption)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Resolvent(benchmark::State& state) {
  const auto sys = toluene(4001);
  const auto& c = find_preset("fig3-iii").config;
  const auto omega = uniform_grid(6.45, 6.85, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_spectrum(sys, c.levels, 0.001, omega, {1, 0, 0}, 1));
}
BENCHMARK(BM_Resolvent)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const auto sys = toluene(4001);
  const auto modes = eigensolve_structured(sys);
  std::vector<double> t(static_cast<std::size_t>(state.range(0)));
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = 0.5 * static_cast<double>(j);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(sys, modes, "e1", t, 1));
}
BENCHMARK(BM_Propagate)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
