// SPDX-License-Identifier: Apache-2.0
//
// Serial reference loops against their OpenMP counterparts. Run with
// OMP_NUM_THREADS set to compare scaling.

#include <random>

#include <benchmark/benchmark.h>

#include "otfs/harness.hpp"
#include "otfs/modem.hpp"
#include "otfs/prbs.hpp"

using namespace otfs;

namespace {

Frame random_dd(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n * m);
  for (auto& x : v) x = {g(rng), g(rng)};
  return Frame(Domain::DelayDoppler, n, m, std::move(v));
}

spectral::Exec exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? spectral::Exec::Serial : spectral::Exec::Parallel;
}

void BM_TransformColumns(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cols = random_dd(n, n).columns();
  for (auto _ : state) {
    auto work = cols;
    spectral::transform_columns(work, spectral::Direction::Inverse, exec_of(state));
    benchmark::DoNotOptimize(work.data());
  }
}
BENCHMARK(BM_TransformColumns)->ArgsProduct({{64, 256, 1024}, {0, 1}});

void BM_IsfftPipeline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_dd(n, n);
  modem::PipelineConfig cfg;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(modem::isfft_pipeline(x, cfg));
}
BENCHMARK(BM_IsfftPipeline)->ArgsProduct({{64, 256}, {0, 1}});

void BM_IsfftDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_dd(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(modem::isfft_direct(x));
}
BENCHMARK(BM_IsfftDirect)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Autocorrelation(benchmark::State& state) {
  const auto bits = prbs::generate(0xFFFF, prbs::kPeriod);
  const auto lags = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    if (state.range(1) == 0) benchmark::DoNotOptimize(prbs::autocorrelation_sums_serial(bits.bits, lags));
    else benchmark::DoNotOptimize(prbs::autocorrelation_sums(bits.bits, lags));
  }
}
BENCHMARK(BM_Autocorrelation)->ArgsProduct({{1024, 16384}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_BerSweepFrames(benchmark::State& state) {
  harness::SweepConfig cfg;
  cfg.order = ModOrder::Qam16;
  cfg.snr_db = {10.0};
  cfg.frames_per_point = 16;
  cfg.frame_exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(harness::ber_sweep(cfg));
}
BENCHMARK(BM_BerSweepFrames)->Args({0, 0})->Args({0, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
