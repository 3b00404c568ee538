#include <benchmark/benchmark.h>

#include <cmath>

#include "dasa/lambert_w.hpp"
#include "dasa/metrics.hpp"
#include "dasa/optimize.hpp"
#include "dasa/phy.hpp"
#include "dasa/queueing.hpp"
#include "dasa/sim.hpp"

namespace {

dasa::ValidatedConfig config(double lambda, dasa::CongestionThreshold m) {
  dasa::ProtocolParams p;
  p.lambda = lambda;
  p.m = m;
  p.q1 = 0.6;
  p.q2 = 0.4;
  p.p2_mw = 0.01;
  return dasa::validate(dasa::reference_channel(), dasa::reference_geometry(), p,
                        dasa::reference_delay());
}

void BM_ExpectedPtToSrDistance(benchmark::State& state) {
  double r = 500.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dasa::phy::expected_pt_to_sr_distance(300.0, r));
    r += 1e-9;
  }
}
BENCHMARK(BM_ExpectedPtToSrDistance);

void BM_SuccessProbabilities(benchmark::State& state) {
  const auto cfg = config(0.3, dasa::CongestionThreshold::finite(3));
  for (auto _ : state) benchmark::DoNotOptimize(dasa::phy::success_probabilities(cfg));
}
BENCHMARK(BM_SuccessProbabilities);

void BM_QueueAnalyzeFinite(benchmark::State& state) {
  const auto m = dasa::CongestionThreshold::finite(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(dasa::queueing::analyze(0.5, {0.6, 0.99}, m));
}
BENCHMARK(BM_QueueAnalyzeFinite)->Arg(1)->Arg(20)->Arg(10000);

void BM_SecondaryThroughput(benchmark::State& state) {
  const auto cfg = config(0.3, dasa::CongestionThreshold::finite(3));
  for (auto _ : state) benchmark::DoNotOptimize(dasa::metrics::secondary_throughput(cfg));
}
BENCHMARK(BM_SecondaryThroughput);

void BM_LambertW(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dasa::lambert_w0(x));
    x = x < 100.0 ? x * 1.001 : 0.1;
  }
}
BENCHMARK(BM_LambertW);

void BM_ClosedFormOptimum(benchmark::State& state) {
  const auto cfg = config(0.3, dasa::CongestionThreshold::infinite());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        dasa::optimize::constrained_optimal_q2(cfg, 0.01, 0.3, dasa::reference_delay()));
}
BENCHMARK(BM_ClosedFormOptimum);

void BM_GridOptimize(benchmark::State& state) {
  const auto cfg = config(0.5, dasa::CongestionThreshold::finite(1));
  dasa::optimize::GridSpec spec;
  spec.q2_steps = static_cast<std::size_t>(state.range(0));
  spec.p2_steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(dasa::optimize::grid_optimize(
        cfg, 0.5, dasa::CongestionThreshold::finite(1), dasa::reference_delay(), spec));
}
BENCHMARK(BM_GridOptimize)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SimulateSlots(benchmark::State& state) {
  const auto cfg = config(0.3, dasa::CongestionThreshold::finite(3));
  dasa::sim::SimSpec spec;
  spec.slots = 2000;
  spec.warmup_slots = 0;
  spec.batches = 10;
  spec.measure_secondary = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(dasa::sim::run(cfg, spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.slots));
}
BENCHMARK(BM_SimulateSlots)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
