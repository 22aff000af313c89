#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "miseal/miseal_sampler.hpp"

namespace miseal {

/// Trend μ on a mask; replicates cycle through the field sets.
struct FieldSet {
  std::string name;
  std::shared_ptr<const ScalarGrid> trend;
  std::shared_ptr<const RegionOfInterest> roi;
};

struct StudyOptions {
  MiSealConfig config;
  /// Strauss simulation length; 0 selects the default rule.
  std::size_t strauss_steps = 0;
  double credible_level = 0.9;
  /// The simulated superposition carries no extra label prior, so by default
  /// inference uses p_W = 1/2, under which that factor cancels.
  bool match_simulating_model = true;
};

struct ParameterSummary {
  double truth = 0.0;
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool covered = false;
  bool overestimated = false;
};

struct ReplicateReport {
  std::size_t index = 0;
  std::string field_set;
  std::uint64_t seed = 0;
  ParameterSummary lambda, beta, gamma;
  std::size_t random_points = 0;
  std::size_t necessary_points = 0;
  /// Simulated-random points with label-1 frequency < 0.5, as a fraction.
  double random_recovered = 0.0;
  /// Simulated-necessary points with label-1 frequency >= 0.5, as a fraction.
  double necessary_recovered = 0.0;
  double lambda_acceptance = 0.0;
  double beta_gamma_acceptance = 0.0;
  double flip_acceptance = 0.0;
};

struct StudyReport {
  std::vector<ReplicateReport> replicates;

  std::size_t covered(ParameterSummary ReplicateReport::*which) const;
  std::size_t overestimated(ParameterSummary ReplicateReport::*which) const;
};

/// Posterior mean and central credible interval of one trace column.
ParameterSummary summarize(std::vector<double> draws, double truth, double level);

/// One replicate per seed: truth from the priors, superposition of a Poisson
/// and a Strauss-with-hard-core pattern in random order, then inference.
/// With an empty trace the posterior summaries echo the prior means.
StudyReport simulation_study(std::span<const FieldSet> field_sets, const StudyOptions& options,
                             std::span<const std::uint64_t> seeds);

}  // namespace miseal
