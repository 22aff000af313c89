#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "miseal/field_model.hpp"
#include "miseal/inference.hpp"
#include "miseal/mple.hpp"
#include "miseal/pcf.hpp"
#include "miseal/point_pattern.hpp"
#include "miseal/rng.hpp"
#include "miseal/strauss_sampler.hpp"
#include "miseal/synthetic_fields.hpp"

namespace {

using namespace miseal;

struct Scene {
  RegionOfInterest roi = RegionOfInterest::full(400, 400);
  std::shared_ptr<ScalarGrid> trend = std::make_shared<ScalarGrid>(roi.geometry(), 5e-4);
  ModelParams params;
  PointPattern pattern;

  Scene() {
    params.beta = 1.9;
    params.gamma = 0.37;
    params.trend = trend;
    Rng rng(11);
    pattern = sample_strauss_hardcore(params, roi, StraussSampler::default_steps(params, roi), rng);
  }
};

const Scene& scene() {
  static const Scene s;
  return s;
}

// 1000 birth-death-move steps at equilibrium.
void BM_StraussSteps(benchmark::State& state) {
  const auto& s = scene();
  StraussSampler sampler(s.params, s.roi);
  std::vector<Point> points = s.pattern.points;
  Rng rng(1);
  for (auto _ : state) sampler.run(points, 1000, rng);
  state.SetItemsProcessed(state.iterations() * 1000);
  state.counters["points"] = static_cast<double>(points.size());
}
BENCHMARK(BM_StraussSteps);

void BM_AuxiliaryDraw(benchmark::State& state) {
  const auto& s = scene();
  Rng rng(2);
  for (auto _ : state) {
    std::vector<Point> aux;
    StraussSampler sampler(s.params, s.roi);
    sampler.run(aux, static_cast<std::size_t>(state.range(0)), rng);
    benchmark::DoNotOptimize(aux.data());
  }
}
BENCHMARK(BM_AuxiliaryDraw)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_NeighbourCount(benchmark::State& state) {
  const auto& s = scene();
  const Point z{200.0, 200.0};
  for (auto _ : state) benchmark::DoNotOptimize(neighbour_count(z, s.pattern.points, 24.0));
  state.counters["points"] = static_cast<double>(s.pattern.size());
}
BENCHMARK(BM_NeighbourCount);

void BM_StraussDensity(benchmark::State& state) {
  const auto& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(log_strauss_density_unnorm(s.pattern.points, s.params));
}
BENCHMARK(BM_StraussDensity);

void BM_IntensityMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = make_synthetic_fields(SyntheticKind::radial, n, {0.5 * n, 0.5 * n}, 9.0);
  for (auto _ : state) {
    auto mu = necessary_intensity(f.orientation, f.frequency, f.roi, 8.0);
    benchmark::DoNotOptimize(mu.values().data());
  }
}
BENCHMARK(BM_IntensityMap)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_MpleFit(benchmark::State& state) {
  const auto& s = scene();
  for (auto _ : state) {
    auto fit = mple_strauss(s.pattern.points, s.params.radii, *s.trend, s.roi);
    benchmark::DoNotOptimize(fit.beta);
  }
}
BENCHMARK(BM_MpleFit)->Unit(benchmark::kMillisecond);

void BM_Pcf(benchmark::State& state) {
  const auto& s = scene();
  std::vector<double> r;
  for (double x = 1.0; x <= 60.0; x += 1.0) r.push_back(x);
  PcfIntensity lam;
  lam.constant = static_cast<double>(s.pattern.size()) / s.pattern.area;
  for (auto _ : state) {
    auto c = pcf_estimate(s.pattern, s.roi, lam, r);
    benchmark::DoNotOptimize(c.g.data());
  }
}
BENCHMARK(BM_Pcf)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
