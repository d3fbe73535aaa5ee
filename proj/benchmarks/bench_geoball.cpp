#include <benchmark/benchmark.h>

#include "geoball/ballvol.hpp"
#include "geoball/curvature.hpp"
#include "geoball/gaussbonnet.hpp"

using namespace geoball;

namespace {

MetricField perturbed() {
  return make_conformal_perturbation(make_round_sphere(1.0), {ProfileKind::kBump, 0.2});
}

void BM_LocalGeometry(benchmark::State& state) {
  const MetricField m = perturbed();
  const ChartPoint p = m.reference_point();
  for (auto _ : state) benchmark::DoNotOptimize(local_geometry(m, p));
}
BENCHMARK(BM_LocalGeometry);

void BM_CurvatureFrame(benchmark::State& state) {
  const MetricField m = perturbed();
  const ChartPoint p = m.reference_point();
  for (auto _ : state) benchmark::DoNotOptimize(curvature_frame(m, p));
}
BENCHMARK(BM_CurvatureFrame);

void BM_BallVolume(benchmark::State& state) {
  const MetricField m = perturbed();
  BallConfig cfg;
  cfg.ode_tol = 1e-10;
  cfg.estimate_error = false;
  for (auto _ : state) benchmark::DoNotOptimize(ball_volume(m, m.reference_point(), 0.5, cfg));
}
BENCHMARK(BM_BallVolume)->Unit(benchmark::kMillisecond);

void BM_GaussBonnet(benchmark::State& state) {
  const MetricField m = perturbed();
  GridSpec g;
  g.nodes_per_axis = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(euler_characteristic(m, g));
}
BENCHMARK(BM_GaussBonnet)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
