// Microbenchmarks for the hot paths: evolution engines, trajectory
// sampling and the segment kernel machinery.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qwalk/classical.hpp"
#include "qwalk/density.hpp"
#include "qwalk/pure_state.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/siy.hpp"
#include "qwalk/trajectory.hpp"

namespace {

qwalk::WalkParams make_params(double p, int t) {
  qwalk::WalkParams w;
  w.lambda = 0.5;
  w.zeta = 1.0;
  w.decoherence = p;
  w.horizon = t;
  return w;
}

void BM_PureEvolve(benchmark::State& state) {
  const auto params = make_params(0.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qwalk::evolve_pure(qwalk::InitialState::basis(0), params));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PureEvolve)->Arg(500)->Arg(1000)->Arg(2000)->Complexity();

void BM_ClassicalEvolve(benchmark::State& state) {
  const auto params = make_params(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qwalk::evolve_classical({0.5, 0.5}, params));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClassicalEvolve)->Arg(500)->Arg(1000)->Arg(2000)->Complexity();

void BM_ExactEvolve(benchmark::State& state) {
  const auto params = make_params(0.5, static_cast<int>(state.range(0)));
  const qwalk::KrausFamily kraus{qwalk::MeasurementFamily::Total, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qwalk::evolve_exact(qwalk::InitialState::basis(0), kraus, params));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactEvolve)->Arg(30)->Arg(60)->Arg(120)->Complexity();

void BM_TrajectorySample(benchmark::State& state) {
  const auto params = make_params(0.5, static_cast<int>(state.range(0)));
  const qwalk::KrausFamily kraus{qwalk::MeasurementFamily::Total, 0.5};
  qwalk::RngStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qwalk::sample_trajectory(
        qwalk::InitialState::basis(0), kraus, params, rng));
  }
}
BENCHMARK(BM_TrajectorySample)->Arg(100)->Arg(500);

void BM_SegmentKernelBuild(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const qwalk::SegmentKernel kernel(10, 10 + len, 0.5, 1.0);
    benchmark::DoNotOptimize(qwalk::coin_marginal_and_jump_law(kernel));
  }
}
BENCHMARK(BM_SegmentKernelBuild)->Arg(4)->Arg(16)->Arg(64);

void BM_SiyAccumulate(benchmark::State& state) {
  const int horizon = 40;
  qwalk::KernelCache cache(0.5, 1.0);
  qwalk::RngStream rng(5);
  const qwalk::MeasurementSchedule schedule =
      qwalk::sample_schedule(0.5, horizon, rng);
  std::vector<std::int64_t> counts(2 * horizon + 1, 0);
  for (auto _ : state) {
    qwalk::siy_accumulate(schedule, 0, static_cast<int>(state.range(0)), 50,
                          cache, rng, counts);
    benchmark::DoNotOptimize(counts.data());
  }
}
BENCHMARK(BM_SiyAccumulate)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
