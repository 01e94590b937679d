#include <benchmark/benchmark.h>

#include <vector>

#include "pfgate/devices.hpp"
#include "pfgate/sweep.hpp"

using namespace pfgate;

namespace {

CircuitParams bench_device() { return load_device("device2").params.with_levels(kDefaultLevels); }

std::vector<double> coupler_grid(int n) {
  std::vector<double> wc(n);
  for (int i = 0; i < n; ++i) wc[i] = 4.6 + 2.4 * i / (n - 1);
  return wc;
}

void static_sweep(benchmark::State& state, sweep::Exec exec) {
  const CircuitParams p = bench_device();
  const std::vector<double> wc = coupler_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep::static_zz(p, wc, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void pauli_sweep(benchmark::State& state, sweep::Exec exec) {
  const CircuitParams p = bench_device();
  const std::vector<double> wc = coupler_grid(static_cast<int>(state.range(0)));
  const std::vector<double> omegas = {0.0, 0.02, 0.04, 0.06, 0.08};
  for (auto _ : state) benchmark::DoNotOptimize(sweep::pauli_grid(p, wc, omegas, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<int64_t>(omegas.size()));
}

void BM_StaticSerial(benchmark::State& s) { static_sweep(s, sweep::Exec::Serial); }
void BM_StaticParallel(benchmark::State& s) { static_sweep(s, sweep::Exec::Parallel); }
void BM_PauliSerial(benchmark::State& s) { pauli_sweep(s, sweep::Exec::Serial); }
void BM_PauliParallel(benchmark::State& s) { pauli_sweep(s, sweep::Exec::Parallel); }

}  // namespace

BENCHMARK(BM_StaticSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StaticParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PauliSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PauliParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
