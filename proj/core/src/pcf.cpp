#include "miseal/pcf.hpp"

#include <algorithm>
#include <cmath>

#include "miseal/errors.hpp"

namespace miseal {

double default_pcf_bandwidth(std::size_t n, double area) {
  return 0.15 / std::sqrt(static_cast<double>(n) / area);
}

PcfCurve pcf_estimate(const PointPattern& pattern, const RegionOfInterest& roi, const PcfIntensity& intensity,
                      std::span<const double> r_grid, double bandwidth) {
  const std::size_t n = pattern.size();
  if (n < 2) throw TooFewPoints("pair correlation needs at least two points");
  const double area = roi.area();
  const double b = bandwidth > 0.0 ? bandwidth : default_pcf_bandwidth(n, area);
  const auto& bounds = roi.bounds();
  const double win_w = static_cast<double>(bounds.i_max - bounds.i_min + 1);
  const double win_h = static_cast<double>(bounds.j_max - bounds.j_min + 1);

  std::vector<double> lam(n, 0.0);
  double homogeneous_pair = 0.0;
  if (intensity.map != nullptr) {
    for (std::size_t a = 0; a < n; ++a) {
      const double v = intensity.map->value_at(pattern.points[a]);
      lam[a] = std::max(is_excluded(v) ? 0.0 : v, 1e-6);
    }
  } else if (intensity.constant > 0.0) {
    std::fill(lam.begin(), lam.end(), intensity.constant);
  } else {
    homogeneous_pair = static_cast<double>(n) * static_cast<double>(n - 1) / (area * area);
  }

  PcfCurve out;
  out.r.assign(r_grid.begin(), r_grid.end());
  out.g.assign(r_grid.size(), 0.0);
  out.point_count = n;
  const double r_max = r_grid.empty() ? 0.0 : *std::max_element(r_grid.begin(), r_grid.end());
  const double reach = r_max + b;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = a + 1; c < n; ++c) {
      const Vec2 d = pattern.points[a] - pattern.points[c];
      const double dist = norm(d);
      if (dist > reach) continue;
      const double overlap = (win_w - std::abs(d.x)) * (win_h - std::abs(d.y));
      if (overlap <= 0.0) continue;
      const double pair_intensity = intensity.map != nullptr || intensity.constant > 0.0 ? lam[a] * lam[c]
                                                                                         : homogeneous_pair;
      // Ordered pairs (a, c) and (c, a) contribute equally.
      const double w = 2.0 / (pair_intensity * overlap);
      for (std::size_t k = 0; k < r_grid.size(); ++k) {
        const double u = (r_grid[k] - dist) / b;
        if (std::abs(u) >= 1.0) continue;
        out.g[k] += w * 0.75 * (1.0 - u * u) / b;
      }
    }
  }
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    out.g[k] = r_grid[k] > 0.0 ? out.g[k] / (2.0 * kPi * r_grid[k]) : 0.0;
  }
  return out;
}

PooledPcf pcf_pool(std::span<const PcfCurve> curves, std::span<const double> weights) {
  if (curves.empty()) throw DataError("nothing to pool");
  if (!weights.empty() && weights.size() != curves.size()) throw DataError("one weight per curve required");
  const std::vector<double>& grid = curves.front().r;
  for (const PcfCurve& c : curves) {
    if (c.r != grid) throw DataError("pooled PCF curves must share one r grid");
  }
  const std::size_t m = curves.size();
  std::vector<double> w(m);
  for (std::size_t k = 0; k < m; ++k) {
    w[k] = weights.empty() ? static_cast<double>(curves[k].point_count) * static_cast<double>(curves[k].point_count)
                           : weights[k];
  }
  double sw = 0.0;
  double sw2 = 0.0;
  for (double x : w) {
    sw += x;
    sw2 += x * x;
  }
  if (!(sw > 0.0)) throw DataError("pooling weights must have positive sum");

  PooledPcf out;
  out.r = grid;
  out.g.assign(grid.size(), 0.0);
  out.lower.assign(grid.size(), 0.0);
  out.upper.assign(grid.size(), 0.0);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    double mean = 0.0;
    for (std::size_t k = 0; k < m; ++k) mean += w[k] * curves[k].g[t];
    mean /= sw;
    double var = 0.0;
    if (m > 1) {
      double ss = 0.0;
      for (std::size_t k = 0; k < m; ++k) ss += w[k] * (curves[k].g[t] - mean) * (curves[k].g[t] - mean);
      const double denom = sw - sw2 / sw;
      var = denom > 0.0 ? ss / denom : 0.0;
    }
    const double half = 1.96 * std::sqrt(var / static_cast<double>(m));
    out.g[t] = mean;
    out.lower[t] = mean - half;
    out.upper[t] = mean + half;
  }
  return out;
}

}  // namespace miseal
