#include <benchmark/benchmark.h>

#include "hcl/cyclesim.hpp"
#include "hcl/examples.hpp"

namespace {

// Simulation throughput on the generated wide pipeline (the same circuit
// the acceptance suite uses for its performance floor).
void BM_PipelineCycles(benchmark::State& state) {
  auto& entry = hcl::examples::find(hcl::examples::registry(), "wide_pipeline");
  hcl::examples::Params params = entry.defaults();
  auto circuit = entry.build(params);
  hcl::Simulator sim(circuit);
  for (auto _ : state) {
    sim.cycle();
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(circuit->stats().total_nodes));
}
BENCHMARK(BM_PipelineCycles);

void BM_CounterCycles(benchmark::State& state) {
  auto& entry = hcl::examples::find(hcl::examples::registry(), "counter");
  hcl::examples::Params params = entry.defaults();
  auto circuit = entry.build(params);
  hcl::Simulator sim(circuit);
  for (auto _ : state) {
    sim.cycle();
  }
}
BENCHMARK(BM_CounterCycles);

void BM_Elaborate(benchmark::State& state) {
  auto& entry = hcl::examples::find(hcl::examples::registry(), "wide_pipeline");
  hcl::examples::Params params = entry.defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(entry.build(params));
  }
}
BENCHMARK(BM_Elaborate);

}  // namespace

BENCHMARK_MAIN();
