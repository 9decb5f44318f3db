// Serial reference kernels versus their OpenMP counterparts. Run with
// --benchmark_filter=... to pick a kernel; thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "mkcs/anneal.hpp"
#include "mkcs/mkcs.hpp"
#include "mkcs/qubo.hpp"

namespace {

mkcs::MkcsInstance bench_instance(int n, int k) {
  return mkcs::make_instance(mkcs::er_generate(n, 0.5, 7), k);
}

void bm_alpha_serial(benchmark::State& state) {
  const auto inst = bench_instance(int(state.range(0)), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(mkcs::alpha_bruteforce_serial(inst).value);
}

void bm_alpha_parallel(benchmark::State& state) {
  const auto inst = bench_instance(int(state.range(0)), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(mkcs::alpha_bruteforce(inst).value);
}

void bm_solve_serial(benchmark::State& state) {
  const auto inst = bench_instance(int(state.range(0)), 2);
  const auto model = mkcs::build_nonlinear(inst, 1.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(mkcs::solve_bruteforce_serial(model).value);
}

void bm_solve_parallel(benchmark::State& state) {
  const auto inst = bench_instance(int(state.range(0)), 2);
  const auto model = mkcs::build_nonlinear(inst, 1.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(mkcs::solve_bruteforce(model).value);
}

void bm_sample_serial(benchmark::State& state) {
  const auto inst = bench_instance(8, 2);
  const auto model = mkcs::build_nonlinear(inst, 1.0, 1.0);
  mkcs::SamplerConfig cfg;
  cfg.num_reads = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mkcs::sample_serial(model, cfg).size());
}

void bm_sample_parallel(benchmark::State& state) {
  const auto inst = bench_instance(8, 2);
  const auto model = mkcs::build_nonlinear(inst, 1.0, 1.0);
  mkcs::SamplerConfig cfg;
  cfg.num_reads = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mkcs::sample(model, cfg).size());
}

}  // namespace

BENCHMARK(bm_alpha_serial)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_alpha_parallel)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_solve_serial)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_solve_parallel)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sample_serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sample_parallel)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
