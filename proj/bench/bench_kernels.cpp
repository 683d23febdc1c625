#include <benchmark/benchmark.h>

#include "holocorr/julia.hpp"
#include "holocorr/symbolic.hpp"
#include "holocorr/thermo.hpp"

using namespace holocorr;

namespace {

const Params kParams(5, 2, {0.05, 0.01});

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_PeriodicPoints(benchmark::State& state) {
  const cplx seed = repelling_fixed_point(kParams);
  for (auto _ : state) {
    benchmark::DoNotOptimize(periodic_points(kParams, 6, seed, {}, exec_of(state)));
  }
}

void BM_TransferApply(benchmark::State& state) {
  const TransferOperator op(kParams, 8, repelling_fixed_point(kParams));
  const auto w = op.weights(1.75);
  std::vector<double> h(op.state_count(), 1.0), out(op.state_count());
  for (auto _ : state) {
    op.apply(w, h, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_CountBoxes(benchmark::State& state) {
  const PointCloud cloud = julia_backward(kParams, 1000000, 50, 1);
  const BoundingSquare bs = bounding_square(cloud.points);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_boxes(cloud.points, bs, 10, exec_of(state)));
  }
}

void BM_JuliaBackward(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(julia_backward(kParams, 200000, 50, 1, exec_of(state)));
  }
}

}  // namespace

// Arg 0: serial reference, 1: OpenMP.
BENCHMARK(BM_PeriodicPoints)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransferApply)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountBoxes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JuliaBackward)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
