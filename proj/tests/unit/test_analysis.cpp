#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "miseal/deletion.hpp"
#include "miseal/dependence.hpp"
#include "miseal/errors.hpp"
#include "miseal/patches.hpp"
#include "miseal/regression.hpp"
#include "miseal/simulation_study.hpp"
#include "miseal/synthetic_fields.hpp"

using namespace miseal;

TEST_SUITE("analysis") {

TEST_CASE("contingency table from the sampled pair") {
  const ContingencyTable t{73, 636, 2349, 6942};
  const auto r = dependence_from_table(t);
  CHECK(std::lround(r.expected.n00) == 172);
  CHECK(std::lround(r.expected.n01) == 537);
  CHECK(std::lround(r.expected.n10) == 2250);
  CHECK(std::lround(r.expected.n11) == 7041);
  CHECK(std::abs(r.kl_bits - 0.0069) < 5e-4);
  CHECK(r.mean_correlation < 0.0);
}

TEST_CASE("KL equals mutual information computed by hand") {
  const ContingencyTable t{10, 20, 30, 40};
  const double n = 100;
  const double px[2] = {0.3, 0.7}, py[2] = {0.4, 0.6};
  const double p[2][2] = {{0.1, 0.2}, {0.3, 0.4}};
  double mi = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) mi += p[a][b] * std::log2(p[a][b] / (px[a] * py[b]));
  CHECK(kl_to_independence_bits(t) == doctest::Approx(mi).epsilon(1e-12));
  (void)n;
}

TEST_CASE("label dependence from streams") {
  SUBCASE("independent streams") {
    LabelSamples s;
    s.point_count = 2;
    std::mt19937_64 eng(3);
    std::bernoulli_distribution a(0.3), b(0.6);
    for (int k = 0; k < 20000; ++k) {
      const std::uint8_t row[2] = {static_cast<std::uint8_t>(a(eng)), static_cast<std::uint8_t>(b(eng))};
      s.push(row);
    }
    const auto r = label_dependence_report(s, 0, 1, 1, 20);
    CHECK(std::abs(r.mean_correlation) < 3 * r.correlation_se);
    CHECK(r.kl_bits < 0.001);
  }
  SUBCASE("anticorrelated streams") {
    LabelSamples s;
    s.point_count = 2;
    for (int k = 0; k < 100; ++k) {
      const std::uint8_t row[2] = {static_cast<std::uint8_t>(k % 2), static_cast<std::uint8_t>(1 - k % 2)};
      s.push(row);
    }
    const auto r = label_dependence_report(s, 0, 1, 1, 5);
    CHECK(r.mean_correlation == doctest::Approx(-1.0));
  }
  SUBCASE("constant label") {
    LabelSamples s;
    s.point_count = 2;
    for (int k = 0; k < 100; ++k) {
      const std::uint8_t row[2] = {1, static_cast<std::uint8_t>(k % 2)};
      s.push(row);
    }
    CHECK_THROWS_AS(label_dependence_report(s, 0, 1, 1, 5), DegenerateMarginal);
    CHECK_THROWS_AS(label_dependence_report(s, 0, 0, 1, 5), DataError);
  }
}

TEST_CASE("identity-link regression on an exact line") {
  const std::vector<PatchObservation> d{{0, 1}, {1, 2}, {2, 3}};
  const auto r = poisson_regression_identity(d);
  CHECK(r.intercept == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.slope == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.intercept_lower <= r.intercept);
  CHECK(r.intercept_upper >= r.intercept);
}

TEST_CASE("regression score identity and positivity") {
  std::mt19937_64 eng(12);
  std::uniform_real_distribution<double> um(0.2, 4.0);
  std::vector<PatchObservation> d;
  for (int k = 0; k < 500; ++k) {
    const double m = um(eng);
    d.push_back({m, static_cast<double>(std::poisson_distribution<int>(0.14 + m)(eng))});
  }
  const auto r = poisson_regression_identity(d);
  double mbar = 0, ybar = 0;
  for (const auto& o : d) {
    mbar += o.m / d.size();
    ybar += o.count / d.size();
    CHECK(r.intercept + r.slope * o.m > 0.0);
  }
  CHECK(std::abs(r.intercept + r.slope * mbar - ybar) < 1e-6);
  CHECK(r.slope_lower < 1.0);
  CHECK(r.slope_upper > 1.0);
}

TEST_CASE("regression null slope coverage") {
  std::mt19937_64 eng(31);
  std::uniform_real_distribution<double> um(0.2, 4.0);
  int covered = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<PatchObservation> d;
    for (int k = 0; k < 300; ++k)
      d.push_back({um(eng), static_cast<double>(std::poisson_distribution<int>(2.0)(eng))});
    const auto r = poisson_regression_identity(d);
    covered += r.slope_lower <= 0.0 && 0.0 <= r.slope_upper;
  }
  CHECK(covered >= 90);
}

TEST_CASE("regression input errors") {
  CHECK_THROWS_AS(poisson_regression_identity(std::vector<PatchObservation>{{0, 1}, {1, 2}}), DataError);
  CHECK_THROWS_AS(poisson_regression_identity(std::vector<PatchObservation>{{1, 1}, {1, 2}, {1, 0}}), DataError);
  CHECK_THROWS_AS(poisson_regression_identity(std::vector<PatchObservation>{{0, 0}, {1, 0}, {2, 0}}), Separation);
}

TEST_CASE("intercept p-value is small for a clear intercept") {
  std::mt19937_64 eng(2);
  std::uniform_real_distribution<double> um(0.2, 4.0);
  std::vector<PatchObservation> d;
  for (int k = 0; k < 2000; ++k) {
    const double m = um(eng);
    d.push_back({m, static_cast<double>(std::poisson_distribution<int>(1.0 + m)(eng))});
  }
  CHECK(poisson_regression_identity(d).p_value_intercept < 1e-6);
}

TEST_CASE("patch grid mimicking a 388 x 374 image") {
  const auto roi = RegionOfInterest::full(388, 374);
  const auto g = PatchGrid::make(roi, 100);
  CHECK(g.patches.size() == 100);
  CHECK(g.mean_area() == doctest::Approx(1451).epsilon(0.01));
  double total = 0;
  for (const auto& p : g.patches) total += p.area;
  CHECK(total == roi.area());
}

TEST_CASE("patch counts") {
  const auto f = make_synthetic_fields(SyntheticKind::radial, 160, {80, 80}, 8.0);
  const FieldModel model(f.orientation, f.frequency, f.roi);
  auto grid = PatchGrid::make(f.roi, 16);
  SUBCASE("empty pattern gives zero counts; m delegates to the area form") {
    const auto c = patch_counts(PointPattern{{}, f.roi.area()}, model, grid);
    REQUIRE(!c.empty());
    for (const auto& pc : c) {
      CHECK(pc.count == 0);
      CHECK(pc.m == doctest::Approx(necessary_minutiae_number_area(pc.patch.region(f.roi.geometry()),
                                                                   f.orientation, f.frequency, f.roi)));
    }
    std::size_t excluded = 0;
    for (const auto& p : grid.patches) excluded += p.excluded;
    CHECK(excluded >= 1);  // the core
    CHECK(c.size() + excluded == grid.patches.size());
  }
  SUBCASE("counts add up over retained patches") {
    std::vector<Point> pts;
    for (int k = 0; k < 60; ++k) pts.push_back({2.5 * k + 3.3, 1.9 * k + 5.1});
    const auto zeta = make_pattern(pts, f.roi);
    const auto c = patch_counts(zeta, model, grid);
    std::size_t total = 0, expected = 0;
    for (const auto& pc : c) total += pc.count;
    for (const auto& z : pts) {
      const auto px = f.roi.geometry().locate(z);
      for (const auto& p : grid.patches)
        if (!p.excluded && p.contains_pixel(px->i, px->j)) ++expected;
    }
    CHECK(total == expected);
  }
}

TEST_CASE("greedy matching score") {
  const std::vector<Point> a{{0, 0}, {100, 0}, {200, 0}};
  const std::vector<Point> b{{3, 4}, {100, 20}, {201, 0}, {400, 400}};
  CHECK(greedy_match_score(a, b) == doctest::Approx(2.0 * 2 / 7));
  CHECK(greedy_match_score(a, a) == 1.0);
  CHECK(greedy_match_score({}, {}) == 0.0);
  CHECK(greedy_match_score(a, b) == greedy_match_score(b, a));
}

TEST_CASE("deletion experiment degenerate paths") {
  const auto roi = RegionOfInterest::full(100, 100);
  const auto z = make_pattern({{10, 10}, {30, 30}, {50, 50}, {70, 70}, {90, 20}}, roi);
  LabelSamples mixed;
  mixed.point_count = 5;
  const std::uint8_t r1[5] = {1, 0, 1, 1, 0}, r2[5] = {0, 1, 1, 0, 1};
  mixed.push(r1);
  mixed.push(r2);
  Rng rng(1);
  SUBCASE("constant scorer") {
    const auto rep = deletion_experiment(z, z, mixed, mixed,
                                         [](std::span<const Point>, std::span<const Point>) { return 0.5; }, 50, rng);
    CHECK(rep.share == 0.0);
    CHECK(rep.mean_relative_difference == 0.0);
  }
  SUBCASE("all points necessary") {
    LabelSamples all;
    all.point_count = 5;
    const std::uint8_t ones[5] = {1, 1, 1, 1, 1};
    all.push(ones);
    const auto rep = deletion_experiment(z, z, all, all, greedy_match_scorer(), 20, rng);
    for (const auto& rec : rep.records) CHECK(rec.score_necessary == rec.score_random);
  }
  SUBCASE("identical patterns still run") {
    const auto rep = deletion_experiment(z, z, mixed, mixed, greedy_match_scorer(), 50, rng);
    CHECK(rep.records.size() == 50);
    CHECK(rep.failures == 0);
  }
  SUBCASE("failing scorer is counted, not fatal") {
    int calls = 0;
    const MatchScorer flaky = [&calls](std::span<const Point>, std::span<const Point>) {
      return ++calls % 4 == 0 ? 2.0 : 0.5;
    };
    const auto rep = deletion_experiment(z, z, mixed, mixed, flaky, 40, rng);
    CHECK(rep.failures > 0);
    CHECK(rep.records.size() == 40);
  }
}

TEST_CASE("Freedman-Diaconis histogram") {
  std::vector<double> v;
  for (int k = 0; k < 100; ++k) v.push_back(k);
  const auto h = freedman_diaconis_histogram(v);
  // IQR = 49.5, width = 2 * 49.5 / 100^(1/3).
  CHECK(h.bin_width == doctest::Approx(99.0 / std::cbrt(100.0)));
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == 100);
  const std::vector<double> flat{1.0, 1.0};
  CHECK(freedman_diaconis_histogram(flat).counts == std::vector<std::size_t>{2});
}

TEST_CASE("simulation study with zero iterations echoes the priors; reruns are identical") {
  const auto f = make_synthetic_fields(SyntheticKind::radial, 120, {60, 60}, 8.0);
  auto mu = std::make_shared<ScalarGrid>(necessary_intensity(f.orientation, f.frequency, f.roi, 8.0));
  const std::vector<FieldSet> sets{{"radial", mu, std::make_shared<RegionOfInterest>(f.roi)}};
  StudyOptions opt;
  opt.config.schedule = {0, 0, 1, 1000};
  const std::vector<std::uint64_t> seeds{1, 2};
  const auto rep = simulation_study(sets, opt, seeds);
  REQUIRE(rep.replicates.size() == 2);
  CHECK(rep.replicates[0].beta.mean == doctest::Approx(1.0));
  CHECK(rep.replicates[0].gamma.mean == doctest::Approx(2.0 / 7.0));
  CHECK(rep.replicates[0].lambda.mean == doctest::Approx(1e-4));

  opt.config.schedule = {200, 1200, 10, 100};
  opt.config.proposal.aux_chain_steps = 300;
  const auto a = simulation_study(sets, opt, seeds);
  const auto b = simulation_study(sets, opt, seeds);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(a.replicates[k].beta.mean == b.replicates[k].beta.mean);
    CHECK(a.replicates[k].lambda.upper == b.replicates[k].lambda.upper);
    CHECK(a.replicates[k].random_recovered == b.replicates[k].random_recovered);
  }
}

}
