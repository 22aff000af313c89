#include <doctest.h>

#include <cmath>

#include "miseal/errors.hpp"
#include "miseal/pcf.hpp"
#include "miseal/strauss_sampler.hpp"

using namespace miseal;

TEST_SUITE("pcf") {

TEST_CASE("default bandwidth rule") { CHECK(default_pcf_bandwidth(100, 10000) == doctest::Approx(1.5)); }

TEST_CASE("pooled Poisson PCF is flat near one") {
  const auto roi = RegionOfInterest::full(200, 200);
  Rng rng(7);
  std::vector<double> r;
  for (double v = 10; v <= 40; v += 5) r.push_back(v);
  std::vector<PcfCurve> curves;
  for (int k = 0; k < 40; ++k) {
    const auto p = sample_poisson(roi, 0.003, rng);
    curves.push_back(pcf_estimate(p, roi, {0.003, nullptr}, r, 3.0));
  }
  const auto pooled = pcf_pool(curves);
  for (std::size_t k = 0; k < r.size(); ++k) {
    CHECK(pooled.g[k] > 0.85);
    CHECK(pooled.g[k] < 1.15);
    CHECK(pooled.lower[k] <= pooled.g[k]);
    CHECK(pooled.upper[k] >= pooled.g[k]);
  }
}

TEST_CASE("two-point pattern has a single kernel bump") {
  const auto roi = RegionOfInterest::full(100, 100);
  const PointPattern p{{{40, 50}, {60, 50}}, roi.area()};
  const std::vector<double> r{10, 19.5, 20, 20.5, 30};
  const auto c = pcf_estimate(p, roi, {0.001, nullptr}, r, 1.0);
  CHECK(c.g[0] == 0.0);
  CHECK(c.g[4] == 0.0);
  // Two ordered pairs, kernel 0.75/b at u=0, overlap (100-20)*100.
  const double peak = 2 * 0.75 / (0.001 * 0.001 * 80 * 100) / (2 * kPi * 20);
  CHECK(c.g[2] == doctest::Approx(peak).epsilon(1e-9));
  CHECK(c.g[1] == doctest::Approx(peak * 0.75 * 20 / 19.5).epsilon(1e-9));
}

TEST_CASE("pooling uses n squared weights") {
  PcfCurve a{{1.0}, {1.0}, 2};
  PcfCurve b{{1.0}, {2.0}, 4};
  const std::vector<PcfCurve> c{a, b};
  const auto p = pcf_pool(c);
  CHECK(p.g[0] == doctest::Approx((4 * 1.0 + 16 * 2.0) / 20));
  PcfCurve bad{{2.0}, {1.0}, 3};
  const std::vector<PcfCurve> mixed{a, bad};
  CHECK_THROWS_AS(pcf_pool(mixed), DataError);
}

TEST_CASE("identical curves give a zero-width band") {
  const PcfCurve c{{1.0, 2.0}, {0.5, 1.5}, 10};
  const std::vector<PcfCurve> same{c, c, c};
  const auto p = pcf_pool(same);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(p.g[k] == doctest::Approx(c.g[k]));
    CHECK(p.lower[k] == doctest::Approx(c.g[k]));
    CHECK(p.upper[k] == doctest::Approx(c.g[k]));
  }
}

TEST_CASE("equal weights average two curves") {
  const std::vector<PcfCurve> c{{{5.0}, {0.8}, 7}, {{5.0}, {1.2}, 9}};
  const std::vector<double> w{1.0, 1.0};
  CHECK(pcf_pool(c, w).g[0] == doctest::Approx(1.0));
}

// The band is for the pooled mean, so it is judged by how often it covers the
// curve the perturbed copies scatter around.
TEST_CASE("band covers the underlying curve") {
  Rng rng(31);
  const std::vector<double> r{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> w(30, 1.0);
  std::size_t covered = 0, total = 0;
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<PcfCurve> curves;
    for (int k = 0; k < 30; ++k) {
      PcfCurve c{r, {}, 20};
      for (double x : r) c.g.push_back(1.0 + 0.01 * x + 0.1 * rng.normal());
      curves.push_back(std::move(c));
    }
    const auto p = pcf_pool(curves, w);
    for (std::size_t t = 0; t < r.size(); ++t, ++total)
      covered += p.lower[t] <= 1.0 + 0.01 * r[t] && 1.0 + 0.01 * r[t] <= p.upper[t];
  }
  CHECK(static_cast<double>(covered) / static_cast<double>(total) >= 0.93);
}

TEST_CASE("fewer than two points") {
  const auto roi = RegionOfInterest::full(10, 10);
  const std::vector<double> r{1.0};
  CHECK_THROWS_AS(pcf_estimate(PointPattern{{{1, 1}}, 100}, roi, {}, r), TooFewPoints);
}

}
