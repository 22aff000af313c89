#pragma once

#include <cstddef>
#include <span>

#include "miseal/point_pattern.hpp"

namespace miseal {

struct MpleOptions {
  double dummy_spacing = 4.0;  // pixels between dummy quadrature points
  int max_iterations = 100;
  double tolerance = 1e-10;
  double gamma_floor = 1e-4;  // γ̂ is confined to [floor, 1 - floor]
  double fallback_beta = 1.0;
  double fallback_gamma = 2.0 / 7.0;
};

struct MpleResult {
  double beta = 1.0;
  double gamma = 2.0 / 7.0;
  int iterations = 0;
  bool converged = true;
  bool fallback = false;  // fewer than two points: prior means returned
};

/// Maximum pseudo-likelihood (β, γ) of the Strauss model with hard core and
/// trend μ, by Berman-Turner quadrature on a regular dummy grid. β is profiled
/// out in closed form and log γ solved by safeguarded Newton steps. When the
/// iteration cap is hit the last iterate is returned with `converged` false.
MpleResult mple_strauss(std::span<const Point> points, const InteractionRadii& radii, const ScalarGrid& trend,
                        const RegionOfInterest& roi, const MpleOptions& options = {});

}  // namespace miseal
