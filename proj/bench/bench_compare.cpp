// Serial vs parallel timings for the batch kernels. The parallel paths
// must stay bit-identical to the serial references (tests enforce that);
// this target answers whether they are actually worth the threads.

#include <benchmark/benchmark.h>

#include <cmath>

#include "fadecap/batch.hpp"
#include "fadecap/channel.hpp"
#include "fadecap/suites.hpp"
#include "fadecap/verify.hpp"

namespace {

fadecap::ChannelSpec bench_channel() {
  fadecap::RawChannel raw;
  raw.h = {0.8, 1.0, 1.7, 2.4, 3.1};
  raw.p = {0.15, 0.2, 0.3, 0.2, 0.15};
  raw.g = 1.9;
  raw.q = 2.5;
  return fadecap::validate_and_normalize(raw);
}

void sweep(benchmark::State& state, fadecap::Exec exec) {
  const fadecap::ChannelSpec spec = bench_channel();
  const std::vector<double> qs = fadecap::make_q_grid(0.05, 500.0, 256, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fadecap::run_sweep(spec, qs, exec));
  }
}

void beta_grid(benchmark::State& state, fadecap::Exec exec) {
  const fadecap::ChannelSpec spec = bench_channel();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fadecap::beta_grid_oracle(spec, 200001, exec));
  }
}

void verify_suites(benchmark::State& state, fadecap::Exec exec) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fadecap::run_all_suites_random(24, 0xbe9c4u, exec));
  }
}

void BM_sweep_serial(benchmark::State& s) { sweep(s, fadecap::Exec::Serial); }
void BM_sweep_parallel(benchmark::State& s) {
  sweep(s, fadecap::Exec::Parallel);
}
void BM_beta_grid_serial(benchmark::State& s) {
  beta_grid(s, fadecap::Exec::Serial);
}
void BM_beta_grid_parallel(benchmark::State& s) {
  beta_grid(s, fadecap::Exec::Parallel);
}
void BM_verify_serial(benchmark::State& s) {
  verify_suites(s, fadecap::Exec::Serial);
}
void BM_verify_parallel(benchmark::State& s) {
  verify_suites(s, fadecap::Exec::Parallel);
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_beta_grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_beta_grid_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
