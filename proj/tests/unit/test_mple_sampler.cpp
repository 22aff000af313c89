#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "miseal/errors.hpp"
#include "miseal/miseal_sampler.hpp"
#include "miseal/mple.hpp"
#include "miseal/strauss_sampler.hpp"

using namespace miseal;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Trend rising linearly from left to right so the shape matters.
std::shared_ptr<ScalarGrid> ramp(std::size_t size, double base) {
  auto g = std::make_shared<ScalarGrid>(GridGeometry{size, size, 1.0, {0, 0}}, 0.0);
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t i = 0; i < size; ++i) g->at(i, j) = base * (0.5 + static_cast<double>(i) / size);
  return g;
}

}  // namespace

TEST_SUITE("mple_sampler") {

TEST_CASE("pseudo-likelihood falls back below two points") {
  const auto roi = RegionOfInterest::full(50, 50);
  const ScalarGrid mu(roi.geometry(), 0.01);
  const std::vector<Point> one{{10, 10}};
  MpleOptions opt;
  opt.fallback_beta = 1.0;
  opt.fallback_gamma = 2.0 / 7.0;
  const auto r = mple_strauss(one, {8, 24}, mu, roi, opt);
  CHECK(r.fallback);
  CHECK(r.beta == 1.0);
  CHECK(r.gamma == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("Poisson special case recovers the intensity scale") {
  const auto roi = RegionOfInterest::full(200, 200);
  const auto mu = ramp(200, 0.002);
  ModelParams p;
  p.beta = 1.5;
  p.gamma = 1.0;
  p.radii = {1e-6, 1e-5};
  p.trend = mu;
  Rng rng(8);
  std::vector<double> est;
  for (int k = 0; k < 20; ++k) {
    const auto x = sample_strauss_hardcore(p, roi, 20000, rng);
    est.push_back(mple_strauss(x.points, p.radii, *mu, roi).beta);
  }
  CHECK(median(est) == doctest::Approx(1.5).epsilon(0.15));
}

TEST_CASE("Strauss parameters are recovered within the MPLE spread") {
  const auto roi = RegionOfInterest::full(200, 200);
  const auto mu = std::make_shared<ScalarGrid>(roi.geometry(), 0.002);
  ModelParams p;
  p.beta = 1.9;
  p.gamma = 0.37;
  p.trend = mu;
  Rng rng(9);
  std::vector<double> b, g;
  for (int k = 0; k < 20; ++k) {
    const auto x = sample_strauss_hardcore(p, roi, 40000, rng);
    const auto r = mple_strauss(x.points, p.radii, *mu, roi);
    CHECK(r.converged);
    b.push_back(r.beta);
    g.push_back(r.gamma);
  }
  CHECK(median(b) >= 1.3);
  CHECK(median(b) <= 2.8);
  CHECK(median(g) >= 0.2);
  CHECK(median(g) <= 0.6);
}

TEST_CASE("gamma estimate stays inside its box") {
  const auto roi = RegionOfInterest::full(100, 100);
  const ScalarGrid mu(roi.geometry(), 0.01);
  // Tightly clustered points push γ̂ to the upper bound.
  const std::vector<Point> x{{40, 40}, {49, 40}, {40, 49}, {49, 49}, {44.5, 58}};
  const auto r = mple_strauss(x, {8, 24}, mu, roi);
  CHECK(r.gamma <= 1 - 1e-4 + 1e-12);
  CHECK(r.gamma >= 1e-4);
}

TEST_CASE("MiSeal run: trace shape, determinism and bounds") {
  const auto roi = RegionOfInterest::full(120, 120);
  const auto mu = ramp(120, 0.003);
  Rng rng(4);
  ModelParams p;
  p.beta = 1.0;
  p.gamma = 0.4;
  p.trend = mu;
  auto pts = sample_strauss_hardcore(p, roi, 10000, rng).points;
  for (const auto& q : sample_poisson(roi, 5e-4, rng).points) pts.push_back(q);
  const auto zeta = make_pattern(pts, roi);

  MiSealConfig cfg;
  cfg.schedule = {2000, 12000, 10, 500};
  cfg.proposal.aux_chain_steps = 500;
  const auto a = run_miseal(zeta, mu, roi, cfg, 77);
  const auto b = run_miseal(zeta, mu, roi, cfg, 77);
  CHECK(a.records.size() == 1000);
  CHECK(a.label_samples.count() == 1000);
  CHECK(a.mple_history.size() == 4);
  REQUIRE(a.records.size() == b.records.size());
  bool same = true;
  for (std::size_t k = 0; k < a.records.size(); ++k)
    same = same && a.records[k].lambda == b.records[k].lambda && a.records[k].beta == b.records[k].beta &&
           a.records[k].gamma == b.records[k].gamma && a.records[k].accepted == b.records[k].accepted;
  CHECK(same);
  CHECK(a.label_samples.flat == b.label_samples.flat);
  for (double f : a.label_frequency) {
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
  for (std::size_t s = 0; s < a.label_samples.count(); ++s)
    CHECK(labels_feasible(zeta.points, a.label_samples.row(s), cfg.radii.hard_core));
  CHECK(a.flip_moves.proposed + a.lambda_moves.proposed + a.beta_gamma_moves.proposed == 12000);
  CHECK(a.lambda_moves.accepted == a.lambda_moves.proposed);
  for (const auto& r : a.records) CHECK(r.gamma < 1.0);
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS((Schedule{10, 5, 1, 1}.validate()), DataError);
  CHECK_THROWS_AS((Schedule{0, 5, 0, 1}.validate()), DataError);
}

}
