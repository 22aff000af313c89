#include "miseal/simulation_study.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "miseal/errors.hpp"
#include "miseal/strauss_sampler.hpp"

namespace miseal {

std::size_t StudyReport::covered(ParameterSummary ReplicateReport::*which) const {
  return static_cast<std::size_t>(
      std::count_if(replicates.begin(), replicates.end(), [&](const auto& r) { return (r.*which).covered; }));
}

std::size_t StudyReport::overestimated(ParameterSummary ReplicateReport::*which) const {
  return static_cast<std::size_t>(
      std::count_if(replicates.begin(), replicates.end(), [&](const auto& r) { return (r.*which).overestimated; }));
}

namespace {

// Type-7 sample quantile of sorted data.
double quantile(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

ParameterSummary summarize(std::vector<double> draws, double truth, double level) {
  ParameterSummary s;
  s.truth = truth;
  if (draws.empty()) throw DataError("no posterior draws to summarize");
  s.mean = std::accumulate(draws.begin(), draws.end(), 0.0) / static_cast<double>(draws.size());
  std::sort(draws.begin(), draws.end());
  s.lower = quantile(draws, 0.5 * (1.0 - level));
  s.upper = quantile(draws, 0.5 * (1.0 + level));
  s.covered = s.lower <= truth && truth <= s.upper;
  s.overestimated = s.mean > truth;
  return s;
}

StudyReport simulation_study(std::span<const FieldSet> field_sets, const StudyOptions& options,
                             std::span<const std::uint64_t> seeds) {
  if (field_sets.empty()) throw DataError("simulation study needs at least one field set");
  StudyReport report;
  MiSealConfig config = options.config;
  if (options.match_simulating_model) {
    config.derive_label_prior = false;
    config.priors.p_w = 0.5;
  }
  for (std::size_t r = 0; r < seeds.size(); ++r) {
    const auto& fs = field_sets[r % field_sets.size()];
    Rng rng(seeds[r]);
    const Priors& pr = options.config.priors;
    Theta truth;
    truth.lambda = rng.gamma(pr.a0, pr.b0);
    truth.beta = rng.gamma(pr.a1, pr.b1);
    truth.gamma = rng.beta(pr.p1, pr.q1);

    ModelParams params;
    params.lambda = truth.lambda;
    params.beta = truth.beta;
    params.gamma = truth.gamma;
    params.radii = options.config.radii;
    params.trend = fs.trend;
    const std::size_t steps =
        options.strauss_steps ? options.strauss_steps : StraussSampler::default_steps(params, *fs.roi);
    const auto eta = sample_strauss_hardcore(params, *fs.roi, steps, rng);
    const auto xi = sample_poisson(*fs.roi, truth.lambda, rng);

    std::vector<std::pair<Point, std::uint8_t>> all;
    for (const auto& p : xi.points) all.emplace_back(p, 0);
    for (const auto& p : eta.points) all.emplace_back(p, 1);
    std::shuffle(all.begin(), all.end(), rng.engine());
    std::vector<Point> pts;
    for (const auto& [p, w] : all) pts.push_back(p);

    ReplicateReport rep;
    rep.index = r;
    rep.field_set = fs.name;
    rep.seed = seeds[r];
    rep.random_points = xi.size();
    rep.necessary_points = eta.size();
    if (pts.empty()) throw DataError("simulated superposition is empty");
    const auto zeta = make_pattern(std::move(pts), *fs.roi);

    const auto trace = run_miseal(zeta, fs.trend, *fs.roi, config, derive_seed(seeds[r], 1));
    if (trace.records.empty()) {
      const Priors& tp = trace.priors;
      rep.lambda = {truth.lambda, tp.a0 / tp.b0, 0.0, 0.0, false, tp.a0 / tp.b0 > truth.lambda};
      rep.beta = {truth.beta, tp.a1 / tp.b1, 0.0, 0.0, false, tp.a1 / tp.b1 > truth.beta};
      const double gm = tp.p1 / (tp.p1 + tp.q1);
      rep.gamma = {truth.gamma, gm, 0.0, 0.0, false, gm > truth.gamma};
    } else {
      std::vector<double> l, b, g;
      for (const auto& rec : trace.records) {
        l.push_back(rec.lambda);
        b.push_back(rec.beta);
        g.push_back(rec.gamma);
      }
      rep.lambda = summarize(std::move(l), truth.lambda, options.credible_level);
      rep.beta = summarize(std::move(b), truth.beta, options.credible_level);
      rep.gamma = summarize(std::move(g), truth.gamma, options.credible_level);
    }
    std::size_t rr = 0, nn = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].second == 0 && trace.label_frequency[i] < 0.5) ++rr;
      if (all[i].second == 1 && trace.label_frequency[i] >= 0.5) ++nn;
    }
    rep.random_recovered = xi.empty() ? 1.0 : static_cast<double>(rr) / static_cast<double>(xi.size());
    rep.necessary_recovered = eta.empty() ? 1.0 : static_cast<double>(nn) / static_cast<double>(eta.size());
    rep.lambda_acceptance = trace.lambda_moves.rate();
    rep.beta_gamma_acceptance = trace.beta_gamma_moves.rate();
    rep.flip_acceptance = trace.flip_moves.rate();
    report.replicates.push_back(rep);
  }
  return report;
}

}  // namespace miseal
