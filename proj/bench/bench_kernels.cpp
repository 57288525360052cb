// Serial reference vs OpenMP kernels on identical inputs.

#include <benchmark/benchmark.h>

#include <cmath>

#include "polyqp/experiment.hpp"

using namespace polyqp;

namespace {

PotentialSpec bench_spec() {
  PotentialSpec spec;
  spec.freq = Frequency::quadratic(0, 1, 2);
  spec.l = 2;
  spec.Q = 1;
  spec.coupling = 0.05;
  spec.coeffs[make_key(IVec2(1, 0), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(-1, 0), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(0, 0), IVec2(1, 0))] = 0.5;
  spec.coeffs[make_key(IVec2(0, 0), IVec2(-1, 0))] = 0.5;
  return spec;
}

GrowthSchedule bench_schedule() {
  GrowthSchedule s;
  s.R1 = 1;
  s.r1 = 1;
  s.factor = 2;
  s.r_cap = 2;
  s.size_cap = 2500;
  return s;
}

ExecutionPolicy policy_of(const benchmark::State& state) {
  return state.range(0) ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
}

void BM_resonance_scan(benchmark::State& state) {
  const PotentialSpec spec = bench_spec();
  const GrowthSchedule sch = bench_schedule();
  ResonanceThresholds th;
  th.delta1_coeff = 0.01;
  const RadiusFunction kappa = [](double) {
    return std::optional<double>(3.0);
  };
  const AngleSet prev = AngleSet::full_circle(0, 81.0);
  for (auto _ : state) {
    auto verdicts = resonance_scan(spec, 81.0, 1, kappa, 1024, sch, th, prev,
                                   policy_of(state));
    benchmark::DoNotOptimize(verdicts);
  }
}
BENCHMARK(BM_resonance_scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_trace_curve(benchmark::State& state) {
  const PotentialSpec spec = bench_spec();
  const GrowthSchedule sch = bench_schedule();
  for (auto _ : state) {
    IsoCurve curve =
        trace_curve(spec, 81.0, 1, AngleSet::full_circle(1, 81.0), 256, sch,
                    SelectionFloors{}, RadialSolveOptions{}, policy_of(state));
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(BM_trace_curve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_grid_render(benchmark::State& state) {
  const PotentialSpec spec = bench_spec();
  const GrowthSchedule sch = bench_schedule();
  const auto set2 = build_truncation(2, sch);
  const Vec2 k(3.7, 1.9);
  const auto set1 = build_truncation(1, sch);
  auto p1 = std::get<SpectralPair>(initial_pair(spec, k, set1));
  auto p2 = std::get<SpectralPair>(continue_pair(spec, k, p1, set2));
  GridSpec grid;
  grid.nx = 128;
  grid.ny = 128;
  grid.extent = Vec2(10.0, 10.0);
  for (auto _ : state) {
    auto field = grid_render(p2, k, spec.freq, grid,
                             PhaseConvention::Absorbed, policy_of(state));
    benchmark::DoNotOptimize(field);
  }
}
BENCHMARK(BM_grid_render)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_nonresonant_fraction(benchmark::State& state) {
  const PotentialSpec spec = bench_spec();
  const GrowthSchedule sch = bench_schedule();
  ResonanceThresholds th;
  th.delta1_coeff = 0.1;
  for (auto _ : state) {
    FractionEstimate f = nonresonant_fraction(spec, 6.0, 1, 4096, 7u, sch, th,
                                              false, policy_of(state));
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_nonresonant_fraction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
