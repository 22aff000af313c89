#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "miseal/point_pattern.hpp"
#include "miseal/rng.hpp"

namespace miseal {

/// Uniform location on the mask by rejection over its bounding box.
Point uniform_point_in_mask(const RegionOfInterest& roi, Rng& rng);

/// Homogeneous Poisson process of intensity λ on the mask.
PointPattern sample_poisson(const RegionOfInterest& roi, double lambda, Rng& rng);
PointPattern sample_poisson(const RegionOfInterest& roi, double lambda, std::uint64_t seed);

struct StraussMoveCounts {
  std::size_t births_proposed = 0, births_accepted = 0;
  std::size_t deaths_proposed = 0, deaths_accepted = 0;
  std::size_t moves_proposed = 0, moves_accepted = 0;
};

/// Birth-death-move Metropolis-Hastings chain targeting the Strauss process
/// with hard core, density ∝ Π β(z) γ^{s_R} 1(d_min > h) relative to the unit
/// Poisson process on the mask. Proposals are chosen with probability 1/3
/// each; moves jitter one point by N(0, (R/2)^2) per coordinate.
class StraussSampler {
 public:
  StraussSampler(const ModelParams& params, const RegionOfInterest& roi);

  /// Advances `state` by `steps` transitions. `state` must be feasible.
  void run(std::vector<Point>& state, std::size_t steps, Rng& rng);

  const StraussMoveCounts& counts() const { return counts_; }

  /// max(10^4, 50 ⌈β ∫ μ⌉).
  static std::size_t default_steps(const ModelParams& params, const RegionOfInterest& roi);

 private:
  void step(std::vector<Point>& state, Rng& rng);

  const ModelParams& params_;
  const RegionOfInterest& roi_;
  double log_gamma_;
  double move_sigma_;
  StraussMoveCounts counts_;
};

/// Final state of a chain started from the empty pattern. Throws
/// DegenerateTrend when the trend is zero or excluded everywhere.
PointPattern sample_strauss_hardcore(const ModelParams& params, const RegionOfInterest& roi, std::size_t steps,
                                     Rng& rng);
PointPattern sample_strauss_hardcore(const ModelParams& params, const RegionOfInterest& roi, std::size_t steps,
                                     std::uint64_t seed);

/// ∫ μ over the mask (excluded pixels contribute nothing).
double trend_integral(const ScalarGrid& trend, const RegionOfInterest& roi);

}  // namespace miseal
