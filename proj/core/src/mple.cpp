#include "miseal/mple.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "miseal/errors.hpp"

namespace miseal {

namespace {

struct QuadraturePoint {
  double weight;
  double mu;
  double t;  // neighbour count among the data (excluding itself)
};

}  // namespace

MpleResult mple_strauss(std::span<const Point> points, const InteractionRadii& radii, const ScalarGrid& trend,
                        const RegionOfInterest& roi, const MpleOptions& options) {
  MpleResult result;
  result.beta = options.fallback_beta;
  result.gamma = options.fallback_gamma;
  if (points.size() < 2) {
    result.fallback = true;
    return result;
  }
  if (!(options.dummy_spacing > 0.0)) throw DataError("dummy spacing must be positive");

  const auto& geom = roi.geometry();
  const auto& b = roi.bounds();
  const double s = options.dummy_spacing;
  const double x0 = geom.origin.x + static_cast<double>(b.i_min) - 0.5;
  const double y0 = geom.origin.y + static_cast<double>(b.j_min) - 0.5;
  const auto tile_of = [&](Point p) {
    return std::pair<long, long>(static_cast<long>(std::floor((p.x - x0) / s)),
                                 static_cast<long>(std::floor((p.y - y0) / s)));
  };

  // Tile area = mask pixels whose centre lies in the tile.
  std::map<std::pair<long, long>, double> tile_area;
  for (std::size_t j = b.j_min; j <= b.j_max; ++j)
    for (std::size_t i = b.i_min; i <= b.i_max; ++i)
      if (roi.inside(i, j)) tile_area[tile_of(geom.center(i, j))] += 1.0;

  std::vector<Point> quad;
  std::vector<std::pair<long, long>> quad_tile;
  for (const auto& [tile, area] : tile_area) {
    const Point c{x0 + (static_cast<double>(tile.first) + 0.5) * s, y0 + (static_cast<double>(tile.second) + 0.5) * s};
    if (!roi.contains(c)) continue;
    quad.push_back(c);
    quad_tile.push_back(tile);
  }
  const std::size_t n_dummy = quad.size();
  for (const auto& p : points) {
    quad.push_back(p);
    quad_tile.push_back(tile_of(p));
  }
  std::map<std::pair<long, long>, std::size_t> tile_count;
  for (const auto& t : quad_tile) ++tile_count[t];

  const double h2 = radii.hard_core * radii.hard_core;
  const double r2 = radii.interaction * radii.interaction;
  std::vector<QuadraturePoint> q;
  q.reserve(quad.size());
  double total_t = 0.0;
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const bool is_data = k >= n_dummy;
    const double area = tile_area.count(quad_tile[k]) ? tile_area[quad_tile[k]] : 0.0;
    const double w = area / static_cast<double>(tile_count[quad_tile[k]]);
    const double mu = trend.value_at(quad[k]);
    std::size_t t = 0;
    bool feasible = true;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (is_data && j == k - n_dummy) continue;
      const double d2 = squared_distance(quad[k], points[j]);
      if (d2 <= h2) feasible = false;
      if (d2 <= r2) ++t;
    }
    if (is_data) {
      if (is_excluded(mu) || !(mu > 0.0)) throw DataError("data point at zero or excluded trend");
      total_t += static_cast<double>(t);
    }
    if (!feasible || is_excluded(mu) || !(mu > 0.0) || w <= 0.0) continue;
    q.push_back({w, mu, static_cast<double>(t)});
  }

  const double n = static_cast<double>(points.size());
  // S_k(b) = Σ w μ t^k e^{b t}; profile score = T - n S1/S0, curvature -n (S2/S0 - (S1/S0)^2).
  auto moments = [&](double bb, double& s0, double& s1, double& s2) {
    s0 = s1 = s2 = 0.0;
    for (const auto& e : q) {
      const double v = e.weight * e.mu * std::exp(bb * e.t);
      s0 += v;
      s1 += v * e.t;
      s2 += v * e.t * e.t;
    }
  };
  auto score = [&](double bb) {
    double s0, s1, s2;
    moments(bb, s0, s1, s2);
    return total_t - n * s1 / s0;
  };

  const double lo_b = std::log(options.gamma_floor);
  const double hi_b = std::log1p(-options.gamma_floor);
  double bb;
  if (score(lo_b) <= 0.0) {
    bb = lo_b;
  } else if (score(hi_b) >= 0.0) {
    bb = hi_b;
  } else {
    double lo = lo_b, hi = hi_b;
    bb = std::clamp(std::log(options.fallback_gamma), lo, hi);
    bool converged = false;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
      double s0, s1, s2;
      moments(bb, s0, s1, s2);
      const double g = total_t - n * s1 / s0;
      const double m1 = s1 / s0;
      const double curv = -n * (s2 / s0 - m1 * m1);
      if (g > 0.0) lo = bb; else hi = bb;
      double next = curv < 0.0 ? bb - g / curv : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::abs(next - bb);
      bb = next;
      if (step < options.tolerance || hi - lo < options.tolerance) {
        converged = true;
        break;
      }
    }
    result.iterations = it + 1;
    result.converged = converged;
  }
  double s0, s1, s2;
  moments(bb, s0, s1, s2);
  if (!(s0 > 0.0)) throw DataError("empty quadrature: trend vanishes on the mask");
  result.gamma = std::exp(bb);
  result.beta = n / s0;
  return result;
}

}  // namespace miseal
