#pragma once

#include <span>
#include <vector>

namespace miseal {

struct PatchObservation {
  double m;      // necessary-minutiae number of the patch
  double count;  // observed minutiae in the patch
};

struct RegressionResult {
  double intercept = 0.0;  // β̂0
  double slope = 0.0;      // β̂1
  double intercept_se = 0.0;
  double slope_se = 0.0;
  double intercept_lower = 0.0, intercept_upper = 0.0;  // 95% Wald
  double slope_lower = 0.0, slope_upper = 0.0;
  /// One-sided likelihood-ratio p-value for β0 > 0 against β0 = 0.
  double p_value_intercept = 1.0;
  double log_likelihood = 0.0;
  int iterations = 0;
  std::vector<PatchObservation> data;
};

/// Poisson regression count ~ Poisson(β0 + β1 m) by Fisher scoring under a
/// log barrier keeping every fitted mean positive; the barrier weight is
/// decreased to 1e-8. Throws DataError for fewer than three points or constant
/// m, Separation when all counts are zero and NonConvergence on failure.
RegressionResult poisson_regression_identity(std::span<const PatchObservation> data);

}  // namespace miseal
