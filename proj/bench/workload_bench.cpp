#include <benchmark/benchmark.h>

#include <vector>

#include "zsmsim/engine/workload.hpp"

namespace {

std::vector<zsm::WorkloadItem> items(std::size_t n) {
  std::vector<zsm::WorkloadItem> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {1.0 + static_cast<double>(i % 37), 1 + static_cast<std::int64_t>(i % 8)};
  return out;
}

template <auto Kernel>
void run_kernel(benchmark::State& state) {
  const auto in = items(static_cast<std::size_t>(state.range(0)));
  std::vector<zsm::WorkloadResult> out(in.size());
  zsm::WorkloadParams params;
  params.jitter_ms = state.range(1) ? 2.0 : 0.0;
  params.seed = 7;
  for (auto _ : state) {
    ++params.tick;
    Kernel(in, out, params);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void serial(std::span<const zsm::WorkloadItem> in, std::span<zsm::WorkloadResult> out, const zsm::WorkloadParams& p) {
  zsm::workload_serial(in, out, p);
}

void parallel(std::span<const zsm::WorkloadItem> in, std::span<zsm::WorkloadResult> out,
              const zsm::WorkloadParams& p) {
  zsm::workload_parallel(in, out, p);
}

}  // namespace

BENCHMARK(run_kernel<serial>)->Name("workload/serial")->ArgsProduct({{64, 1024, 16384, 262144}, {0}});
BENCHMARK(run_kernel<parallel>)->Name("workload/parallel")->ArgsProduct({{64, 1024, 16384, 262144}, {0}});
BENCHMARK(run_kernel<serial>)->Name("workload/serial_jitter")->ArgsProduct({{64, 1024}, {1}});
BENCHMARK(run_kernel<parallel>)->Name("workload/parallel_jitter")->ArgsProduct({{64, 1024}, {1}});

BENCHMARK_MAIN();
