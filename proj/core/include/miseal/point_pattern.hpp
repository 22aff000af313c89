#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "miseal/geometry.hpp"
#include "miseal/grid.hpp"

namespace miseal {

/// Finite planar point configuration inside a region of interest of the
/// given area (pixel^2).
struct PointPattern {
  std::vector<Point> points;
  double area = 0.0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Checks mask membership and rejects exact duplicates; throws DataError.
PointPattern make_pattern(std::vector<Point> points, const RegionOfInterest& roi);

struct InteractionRadii {
  double hard_core = 8.0;     // h
  double interaction = 24.0;  // R

  void validate() const;
};

/// θ = (λ, β, γ) with fixed radii and the trend shape μ; β(z) = β μ(z).
struct ModelParams {
  double lambda = 0.0;
  double beta = 1.0;
  double gamma = 1.0;
  InteractionRadii radii;
  std::shared_ptr<const ScalarGrid> trend;

  /// β(z); NaN where the trend is excluded or z is off the raster.
  double activity(Point z) const { return beta * trend->value_at(z); }
};

/// d_min; +∞ for fewer than two points.
double min_pair_distance(std::span<const Point> points);
/// s_R: unordered pairs with distance <= R.
std::size_t close_pair_count(std::span<const Point> points, double interaction);
/// t_R(z, p): points of p other than z itself within distance R of z.
std::size_t neighbour_count(Point z, std::span<const Point> points, double interaction);
/// True when z is farther than h from every point of p other than z itself.
bool respects_hard_core(Point z, std::span<const Point> points, double hard_core);

/// count * log(base) with 0 * log(0) = 0.
double log_power(double base, std::size_t count);

/// log f_λ(ξ) = (1 - λ)|X| + n log λ.
double log_poisson_density(const PointPattern& pattern, double lambda);

/// Σ log β(z) + s_R log γ if d_min > h, else -∞. The normalizer is never included.
double log_strauss_density_unnorm(std::span<const Point> points, const ModelParams& params);

/// log g(p ∪ {z}) - log g(p) for feasible p; -∞ if z breaks the hard core.
double log_strauss_add_ratio(Point z, std::span<const Point> points, const ModelParams& params);

}  // namespace miseal
