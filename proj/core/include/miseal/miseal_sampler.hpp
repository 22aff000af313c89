#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "miseal/inference.hpp"
#include "miseal/mple.hpp"

namespace miseal {

struct Schedule {
  std::size_t burn_in = 10000;
  std::size_t iterations = 1010000;  // total, burn-in included
  std::size_t thinning = 100;
  std::size_t refit_interval = 1000;

  void validate() const;
};

enum class MoveType : std::uint8_t { lambda = 0, beta_gamma = 1, flip = 2 };

struct TraceRecord {
  std::size_t t;
  double lambda;
  double beta;
  double gamma;
  MoveType move;
  bool accepted;
};

/// Thinned joint label vectors, stored row-major.
struct LabelSamples {
  std::size_t point_count = 0;
  std::vector<std::uint8_t> flat;

  std::size_t count() const { return point_count == 0 ? 0 : flat.size() / point_count; }
  std::span<const std::uint8_t> row(std::size_t s) const {
    return std::span<const std::uint8_t>(flat).subspan(s * point_count, point_count);
  }
  void push(std::span<const std::uint8_t> labels) { flat.insert(flat.end(), labels.begin(), labels.end()); }
};

struct MiSealConfig {
  Priors priors;
  /// When set, p_w is recomputed from λ0, |X| and k for each data set.
  bool derive_label_prior = true;
  ProposalSettings proposal;
  Schedule schedule;
  InteractionRadii radii;
  MpleOptions mple;
  /// Average the burn-in pseudo-likelihood estimates in log space.
  bool aux_mean_log_space = false;
  /// Initial θ; prior means when unset.
  std::optional<Theta> initial_theta;
};

struct PosteriorTrace {
  std::vector<TraceRecord> records;
  LabelSamples label_samples;
  /// Fraction of post-burn-in iterations with W_i = 1.
  std::vector<double> label_frequency;
  std::size_t thinning = 1;
  MoveStats lambda_moves;
  MoveStats beta_gamma_moves;
  MoveStats flip_moves;
  /// Frozen auxiliary parameters and the burn-in estimates they average.
  Theta aux_params;
  std::vector<Theta> mple_history;
  Priors priors;
};

/// Runs the MiSeal chain on ζ with trend μ. Deterministic given the seed.
PosteriorTrace run_miseal(const PointPattern& zeta, std::shared_ptr<const ScalarGrid> trend,
                          const RegionOfInterest& roi, const MiSealConfig& config, std::uint64_t seed);

}  // namespace miseal
