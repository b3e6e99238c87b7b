#include <benchmark/benchmark.h>

#include <vector>

#include "ssusy/kernels.hpp"

using namespace ssusy;

namespace {

SystemSpec coupled() {
  const Mat2 u = characteristic_from_angles(0.7, 1.1, 0.4);
  return SystemSpec::interval(1.0, u, Mat2::diag(std::polar(1.0, 0.9), -1.0));
}

std::vector<double> grid(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = -4.0 + 400.0 * double(i) / double(n - 1);
  return s;
}

template <auto Kernel>
void run(benchmark::State& state) {
  const SystemSpec spec = coupled();
  const auto s = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(spec, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(run<phase_samples_serial>)->Name("phase_samples/serial")->Range(1 << 10, 1 << 16);
BENCHMARK(run<phase_samples_parallel>)->Name("phase_samples/parallel")->Range(1 << 10, 1 << 16);
BENCHMARK(run<sigma_min_profile_serial>)->Name("sigma_min_profile/serial")->Range(1 << 10, 1 << 16);
BENCHMARK(run<sigma_min_profile_parallel>)->Name("sigma_min_profile/parallel")->Range(1 << 10, 1 << 16);

BENCHMARK_MAIN();
