#include "miseal/point_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "miseal/errors.hpp"

namespace miseal {

PointPattern make_pattern(std::vector<Point> points, const RegionOfInterest& roi) {
  for (const Point& p : points) {
    if (!roi.contains(p)) {
      throw DataError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") lies outside the mask");
    }
  }
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DataError("point pattern contains duplicate coordinates");
  }
  return {std::move(points), roi.area()};
}

void InteractionRadii::validate() const {
  if (!(hard_core > 0.0 && hard_core < interaction)) {
    throw DataError("interaction radii must satisfy 0 < h < R");
  }
}

double min_pair_distance(std::span<const Point> points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) best = std::min(best, squared_distance(points[a], points[b]));
  }
  return std::sqrt(best);
}

std::size_t close_pair_count(std::span<const Point> points, double interaction) {
  const double r2 = interaction * interaction;
  std::size_t count = 0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (squared_distance(points[a], points[b]) <= r2) ++count;
    }
  }
  return count;
}

std::size_t neighbour_count(Point z, std::span<const Point> points, double interaction) {
  const double r2 = interaction * interaction;
  std::size_t count = 0;
  for (const Point& w : points) {
    if (w == z) continue;
    if (squared_distance(z, w) <= r2) ++count;
  }
  return count;
}

bool respects_hard_core(Point z, std::span<const Point> points, double hard_core) {
  const double h2 = hard_core * hard_core;
  for (const Point& w : points) {
    if (w == z) continue;
    if (squared_distance(z, w) <= h2) return false;
  }
  return true;
}

double log_power(double base, std::size_t count) {
  if (count == 0) return 0.0;
  return static_cast<double>(count) * std::log(base);
}

double log_poisson_density(const PointPattern& pattern, double lambda) {
  return (1.0 - lambda) * pattern.area + log_power(lambda, pattern.size());
}

double log_strauss_density_unnorm(std::span<const Point> points, const ModelParams& params) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (!(min_pair_distance(points) > params.radii.hard_core)) return kNegInf;
  double total = 0.0;
  for (const Point& z : points) {
    const double b = params.activity(z);
    if (is_excluded(b)) return kNegInf;
    total += std::log(b);
  }
  return total + log_power(params.gamma, close_pair_count(points, params.radii.interaction));
}

double log_strauss_add_ratio(Point z, std::span<const Point> points, const ModelParams& params) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const double h2 = params.radii.hard_core * params.radii.hard_core;
  const double r2 = params.radii.interaction * params.radii.interaction;
  std::size_t t = 0;
  for (const Point& w : points) {
    const double d2 = squared_distance(z, w);
    if (d2 <= h2) return kNegInf;
    if (d2 <= r2) ++t;
  }
  const double b = params.activity(z);
  if (is_excluded(b)) return kNegInf;
  return std::log(b) + log_power(params.gamma, t);
}

}  // namespace miseal
