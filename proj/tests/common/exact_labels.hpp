#pragma once

// Brute-force label posterior over all 2^k labelings, used as an oracle.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "miseal/point_pattern.hpp"

namespace miseal::testing {

/// P(W_i = 1 | ζ, θ) from π(W) ∝ f_λ(ξ) g̃(η) p^{n1} (1-p)^{n0}.
inline std::vector<double> exact_label_marginals(const PointPattern& zeta, const ModelParams& strauss, double lambda,
                                                 double p_w) {
  const std::size_t k = zeta.size();
  std::vector<double> logw;
  std::vector<unsigned> states;
  for (unsigned s = 0; s < (1u << k); ++s) {
    PointPattern xi{{}, zeta.area};
    std::vector<Point> eta;
    for (std::size_t i = 0; i < k; ++i) {
      if (s >> i & 1u) eta.push_back(zeta.points[i]);
      else xi.points.push_back(zeta.points[i]);
    }
    double lw = log_poisson_density(xi, lambda) + log_strauss_density_unnorm(eta, strauss) +
                log_power(p_w, eta.size()) + log_power(1.0 - p_w, xi.size());
    if (std::isnan(lw) || lw == -std::numeric_limits<double>::infinity()) continue;
    logw.push_back(lw);
    states.push_back(s);
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> marg(k, 0.0);
  double z = 0.0;
  for (std::size_t t = 0; t < logw.size(); ++t) {
    const double w = std::exp(logw[t] - top);
    z += w;
    for (std::size_t i = 0; i < k; ++i)
      if (states[t] >> i & 1u) marg[i] += w;
  }
  for (auto& m : marg) m /= z;
  return marg;
}

}  // namespace miseal::testing
