#include <benchmark/benchmark.h>

#include "qcoex/planner.hpp"
#include "qcoex/presets.hpp"

using namespace qcoex;

namespace {

ChannelAllocation ring_channels() {
  ChannelAllocation alloc;
  for (int core = 1; core <= 6; ++core) {
    alloc.channels.push_back(DataChannel{CoreId(core), Wavelength(1540.0), -4.0});
  }
  return alloc;
}

LinkModel demo_link() {
  LinkModel link;
  link.fiber = fiber_preset("nt-mcf-2018");
  link.filter = filter_preset("fbg-bpf-2018");
  link.detector = detector_preset("detector-id210");
  link.allocation = ring_channels();
  return link;
}

PlanningProblem demo_problem() {
  PlanningProblem p;
  p.fiber = fiber_preset("nt-mcf-2018");
  p.filter = filter_preset("fbg-bpf-2018");
  p.detector = detector_preset("detector-id210");
  p.qkd.mu = 0.25;
  p.qkd.misalignment_error = 0.019;
  p.extra_loss_db = 3.5;
  p.min_key_rate_bps = 1000.0;
  for (int core = 0; core <= 6; ++core) {
    for (double nm : {1530.0, 1534.0, 1538.0, 1542.0, 1546.0, 1554.0}) {
      p.candidates.push_back(CandidateSlot{CoreId(core), Wavelength(nm), -4.0});
    }
  }
  return p;
}

void BM_KeyRate(benchmark::State& state) {
  QkdLinkParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(key_rate(params, 0.0891, 1.78e-4, 1e6));
  }
}
BENCHMARK(BM_KeyRate);

void BM_OptimizeMu(benchmark::State& state) {
  QkdLinkParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_mu(params, 0.0891, 1.78e-4));
  }
}
BENCHMARK(BM_OptimizeMu);

void BM_NoiseBreakdown(benchmark::State& state) {
  const FiberSpec fiber = fiber_preset("nt-mcf-2018");
  const FilterSpec filter = filter_preset("fbg-bpf-2018");
  const DetectorSpec det = detector_preset("detector-id210");
  const ChannelAllocation alloc = ring_channels();
  for (auto _ : state) {
    benchmark::DoNotOptimize(noise_breakdown(fiber, filter, det, alloc, 2.5));
  }
}
BENCHMARK(BM_NoiseBreakdown);

void BM_EvaluateLink(benchmark::State& state) {
  const LinkModel link = demo_link();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_link(link, 2.5));
  }
}
BENCHMARK(BM_EvaluateLink);

void BM_SweepDistance(benchmark::State& state) {
  const LinkModel link = demo_link();
  std::vector<double> lengths;
  for (int i = 1; i <= 60; ++i) {
    lengths.push_back(2.5 * i);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_distance(link, lengths));
  }
}
BENCHMARK(BM_SweepDistance);

void BM_PlanAllocation(benchmark::State& state) {
  const PlanningProblem problem = demo_problem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_allocation(problem));
  }
}
BENCHMARK(BM_PlanAllocation);

}  // namespace

BENCHMARK_MAIN();
