#include "miseal/field_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "miseal/errors.hpp"

namespace miseal {
namespace {

constexpr long kMargin = 3;

struct Bilinear {
  double value = 0.0;
  bool ok = false;
};

Bilinear bilinear(const GridGeometry& g, const std::vector<double>& values, const std::vector<std::uint8_t>& active,
                  Point p) {
  const double u = p.x - g.origin.x;
  const double v = p.y - g.origin.y;
  const double fi = std::floor(u);
  const double fj = std::floor(v);
  if (fi < 0.0 || fj < 0.0 || fi + 1.0 >= static_cast<double>(g.width) || fj + 1.0 >= static_cast<double>(g.height)) {
    return {};
  }
  const auto i = static_cast<std::size_t>(fi);
  const auto j = static_cast<std::size_t>(fj);
  const std::size_t k00 = g.index(i, j);
  const std::size_t k10 = g.index(i + 1, j);
  const std::size_t k01 = g.index(i, j + 1);
  const std::size_t k11 = g.index(i + 1, j + 1);
  if (!active[k00] || !active[k10] || !active[k01] || !active[k11]) return {};
  const double a = u - fi;
  const double b = v - fj;
  const double val = (1.0 - a) * (1.0 - b) * values[k00] + a * (1.0 - b) * values[k10] + (1.0 - a) * b * values[k01] +
                     a * b * values[k11];
  return {val, true};
}

Vec2 direction_from_doubled(double c, double s) {
  const double theta = 0.5 * std::atan2(s, c);
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> masked_gradient(const GridGeometry& g,
                                                                    const std::vector<double>& values,
                                                                    const std::vector<std::uint8_t>& active) {
  std::vector<double> dx(g.cell_count(), 0.0);
  std::vector<double> dy(g.cell_count(), 0.0);
  auto on = [&](long i, long j) {
    return i >= 0 && j >= 0 && i < static_cast<long>(g.width) && j < static_cast<long>(g.height) &&
           active[g.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
  };
  auto val = [&](long i, long j) { return values[g.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))]; };
  auto diff = [&](long i, long j, long di, long dj) {
    const bool fwd = on(i + di, j + dj);
    const bool bwd = on(i - di, j - dj);
    if (fwd && bwd) return 0.5 * (val(i + di, j + dj) - val(i - di, j - dj));
    if (fwd) return val(i + di, j + dj) - val(i, j);
    if (bwd) return val(i, j) - val(i - di, j - dj);
    return 0.0;
  };
  for (long j = 0; j < static_cast<long>(g.height); ++j) {
    for (long i = 0; i < static_cast<long>(g.width); ++i) {
      if (!on(i, j)) continue;
      const std::size_t k = g.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      dx[k] = diff(i, j, 1, 0);
      dy[k] = diff(i, j, 0, 1);
    }
  }
  return {std::move(dx), std::move(dy)};
}

FieldModel::FieldModel(const OrientationGrid& orientation, const ScalarGrid& frequency, const RegionOfInterest& roi,
                       FieldOptions options)
    : options_(options), roi_(roi) {
  const GridGeometry& g = roi.geometry();
  if (!(orientation.geometry() == g) || !(frequency.geometry() == g)) {
    throw GeometryMismatch("orientation, frequency and mask rasters disagree on shape or pixel size");
  }
  if (options_.smoothing_sigma < 0.0) throw DataError("smoothing sigma must be non-negative");
  if (options_.area_subsamples < 1) throw DataError("area subsamples must be positive");
  cos2_ = masked_gaussian_smooth(g, orientation.cos2theta(), roi.mask(), options_.smoothing_sigma);
  sin2_ = masked_gaussian_smooth(g, orientation.sin2theta(), roi.mask(), options_.smoothing_sigma);
  phi_ = masked_gaussian_smooth(g, frequency.values(), roi.mask(), options_.smoothing_sigma);
  std::vector<std::uint8_t> active(roi.mask().begin(), roi.mask().end());
  for (std::size_t k = 0; k < phi_.size(); ++k) {
    if (is_excluded(phi_[k])) active[k] = 0;
  }
  std::tie(phi_dx_, phi_dy_) = masked_gradient(g, phi_, active);
}

PatchFields FieldModel::patch(const StarRegion& region, std::optional<Vec2> seed, bool clip_to_mask) const {
  const GridGeometry& g = roi_.geometry();
  const BoundingBox box = region.bounds();
  auto to_index = [](double coord, double origin) { return static_cast<long>(std::floor(coord - origin + 0.5)); };
  const long i_lo = std::max(0L, to_index(box.lo.x, g.origin.x) - kMargin);
  const long j_lo = std::max(0L, to_index(box.lo.y, g.origin.y) - kMargin);
  const long i_hi = std::min(static_cast<long>(g.width) - 1, to_index(box.hi.x, g.origin.x) + kMargin);
  const long j_hi = std::min(static_cast<long>(g.height) - 1, to_index(box.hi.y, g.origin.y) + kMargin);
  if (i_lo > i_hi || j_lo > j_hi) throw EmptyPatch("patch lies outside the raster");

  GridGeometry wg;
  wg.width = static_cast<std::size_t>(i_hi - i_lo + 1);
  wg.height = static_cast<std::size_t>(j_hi - j_lo + 1);
  wg.pixel_size = g.pixel_size;
  wg.origin = g.center(static_cast<std::size_t>(i_lo), static_cast<std::size_t>(j_lo));
  auto global = [&](std::size_t i, std::size_t j) {
    return g.index(i + static_cast<std::size_t>(i_lo), j + static_cast<std::size_t>(j_lo));
  };

  const std::size_t n = wg.cell_count();
  std::vector<std::uint8_t> inside(n, 0);
  bool any_inside = false;
  for (std::size_t j = 0; j < wg.height; ++j) {
    for (std::size_t i = 0; i < wg.width; ++i) {
      if (!region.contains(wg.center(i, j))) continue;
      const std::size_t gk = global(i, j);
      if (!roi_.mask()[gk] || is_excluded(phi_[gk])) {
        if (!clip_to_mask) throw OutOfMask("patch leaves the region of interest");
        continue;
      }
      inside[wg.index(i, j)] = 1;
      any_inside = true;
    }
  }
  if (!any_inside) throw EmptyPatch("patch contains no pixel of the region of interest");

  // Dilate by the interpolation margin, restricted to the mask.
  std::vector<std::uint8_t> active(n, 0);
  for (std::size_t j = 0; j < wg.height; ++j) {
    for (std::size_t i = 0; i < wg.width; ++i) {
      const std::size_t gk = global(i, j);
      if (!roi_.mask()[gk] || is_excluded(phi_[gk])) continue;
      bool near = false;
      for (long dj = -kMargin; dj <= kMargin && !near; ++dj) {
        for (long di = -kMargin; di <= kMargin && !near; ++di) {
          const long ii = static_cast<long>(i) + di;
          const long jj = static_cast<long>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<long>(wg.width) || jj >= static_cast<long>(wg.height)) continue;
          near = inside[wg.index(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj))] != 0;
        }
      }
      active[wg.index(i, j)] = near ? 1 : 0;
    }
  }

  for (std::size_t j = 0; j < wg.height; ++j) {
    for (std::size_t i = 0; i < wg.width; ++i) {
      const std::size_t k = wg.index(i, j);
      if (!inside[k]) continue;
      const std::size_t gk = global(i, j);
      if (std::hypot(cos2_[gk], sin2_[gk]) < options_.coherence_threshold) {
        throw SingularityInPatch("orientation coherence below threshold inside patch");
      }
    }
  }

  // Reference pixel: the one containing z0 if usable, else the nearest inside pixel.
  const Point z0 = region.reference();
  std::size_t ref = n;
  if (auto px = wg.locate(z0); px && inside[wg.index(px->i, px->j)]) {
    ref = wg.index(px->i, px->j);
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < wg.height; ++j) {
      for (std::size_t i = 0; i < wg.width; ++i) {
        if (!inside[wg.index(i, j)]) continue;
        const double d = squared_distance(wg.center(i, j), z0);
        if (d < best) {
          best = d;
          ref = wg.index(i, j);
        }
      }
    }
  }

  PatchFields out;
  DirectionField& dir = out.direction;
  dir.geometry = wg;
  dir.active.assign(n, 0);
  dir.fx.assign(n, 0.0);
  dir.fy.assign(n, 0.0);

  auto raw_direction = [&](std::size_t k) {
    const std::size_t i = k % wg.width;
    const std::size_t j = k / wg.width;
    const std::size_t gk = global(i, j);
    return direction_from_doubled(cos2_[gk], sin2_[gk]);
  };

  Vec2 start = raw_direction(ref);
  const Vec2 s = seed.value_or(start);
  if (dot(start, s) < 0.0) start = -start;
  dir.fx[ref] = start.x;
  dir.fy[ref] = start.y;
  dir.active[ref] = 1;
  std::deque<std::size_t> queue{ref};
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const long i = static_cast<long>(k % wg.width);
    const long j = static_cast<long>(k / wg.width);
    const Vec2 parent{dir.fx[k], dir.fy[k]};
    const long offsets[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& o : offsets) {
      const long ii = i + o[0];
      const long jj = j + o[1];
      if (ii < 0 || jj < 0 || ii >= static_cast<long>(wg.width) || jj >= static_cast<long>(wg.height)) continue;
      const std::size_t kk = wg.index(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
      if (!active[kk] || dir.active[kk]) continue;
      Vec2 d = raw_direction(kk);
      if (dot(d, parent) < 0.0) d = -d;
      dir.fx[kk] = d.x;
      dir.fy[kk] = d.y;
      dir.active[kk] = 1;
      queue.push_back(kk);
    }
  }

  // A selection that flips between neighbours means the patch wraps a singularity.
  for (std::size_t j = 0; j < wg.height; ++j) {
    for (std::size_t i = 0; i < wg.width; ++i) {
      const std::size_t k = wg.index(i, j);
      if (!dir.active[k]) continue;
      if (i + 1 < wg.width && dir.active[k + 1] && dot(dir.at(i, j), dir.at(i + 1, j)) < 0.0) {
        throw SingularityInPatch("no continuous direction selection exists inside patch");
      }
      if (j + 1 < wg.height && dir.active[k + wg.width] && dot(dir.at(i, j), dir.at(i, j + 1)) < 0.0) {
        throw SingularityInPatch("no continuous direction selection exists inside patch");
      }
    }
  }

  auto [dfx_dx, dfx_dy] = masked_gradient(wg, dir.fx, dir.active);
  auto [dfy_dx, dfy_dy] = masked_gradient(wg, dir.fy, dir.active);
  out.divergence.assign(n, ScalarGrid::kExcluded);
  out.phi.assign(n, ScalarGrid::kExcluded);
  out.integrand.assign(n, ScalarGrid::kExcluded);
  for (std::size_t j = 0; j < wg.height; ++j) {
    for (std::size_t i = 0; i < wg.width; ++i) {
      const std::size_t k = wg.index(i, j);
      if (!dir.active[k]) continue;
      const std::size_t gk = global(i, j);
      const double div = dfx_dx[k] + dfy_dy[k];
      if (inside[k] && std::abs(div) > options_.max_divergence) {
        throw SingularityInPatch("direction field divergence exceeds threshold inside patch");
      }
      out.divergence[k] = div;
      out.phi[k] = phi_[gk];
      out.integrand[k] = phi_[gk] * div + (phi_dx_[gk] * dir.fx[k] + phi_dy_[gk] * dir.fy[k]);
    }
  }
  return out;
}

double FieldModel::signed_boundary_flux(const PatchFields& fields, const StarRegion& region) const {
  const DirectionField& dir = fields.direction;
  double flux = 0.0;
  for (const BoundaryElement& e : region.boundary(options_.boundary_step)) {
    const Bilinear fx = bilinear(dir.geometry, dir.fx, dir.active, e.midpoint);
    const Bilinear fy = bilinear(dir.geometry, dir.fy, dir.active, e.midpoint);
    const Bilinear phi = bilinear(dir.geometry, fields.phi, dir.active, e.midpoint);
    if (!fx.ok || !fy.ok || !phi.ok) throw OutOfMask("patch boundary leaves the region of interest");
    Vec2 f{fx.value, fy.value};
    const double len = norm(f);
    if (len > 0.0) f = (1.0 / len) * f;
    flux += phi.value * dot(f, e.normal) * e.length;
  }
  return flux;
}

double FieldModel::signed_area_flux(const PatchFields& fields, const StarRegion& region, bool clip_to_mask) const {
  const DirectionField& dir = fields.direction;
  const GridGeometry& wg = dir.geometry;
  // Pixels cut by the boundary get a finer subsample grid so that partial
  // coverage is resolved to well below a pixel.
  std::vector<std::uint8_t> cut(wg.cell_count(), 0);
  for (const BoundaryElement& e : region.boundary(0.1)) {
    if (const auto px = wg.locate(e.midpoint)) cut[wg.index(px->i, px->j)] = 1;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < wg.height; ++j) {
    for (std::size_t i = 0; i < wg.width; ++i) {
      const Point c = wg.center(i, j);
      const int s = options_.area_subsamples * (cut[wg.index(i, j)] ? 8 : 1);
      const double weight = 1.0 / (static_cast<double>(s) * static_cast<double>(s));
      double pixel_sum = 0.0;
      for (int b = 0; b < s; ++b) {
        for (int a = 0; a < s; ++a) {
          const Point p{c.x + (a + 0.5) / s - 0.5, c.y + (b + 0.5) / s - 0.5};
          if (!region.contains(p)) continue;
          if (!roi_.contains(p)) {
            if (clip_to_mask) continue;
            throw OutOfMask("patch leaves the region of interest");
          }
          const Bilinear v = bilinear(wg, fields.integrand, dir.active, p);
          if (v.ok) {
            pixel_sum += v.value;
          } else if (dir.active[wg.index(i, j)]) {
            pixel_sum += fields.integrand[wg.index(i, j)];
          } else if (!clip_to_mask) {
            throw OutOfMask("patch leaves the region of interest");
          }
        }
      }
      total += pixel_sum * weight;
    }
  }
  return total;
}

double FieldModel::minutiae_number_boundary(const StarRegion& region, std::optional<Vec2> seed) const {
  return std::abs(signed_boundary_flux(patch(region, seed), region));
}

double FieldModel::minutiae_number_area(const StarRegion& region, std::optional<Vec2> seed, bool clip_to_mask) const {
  return std::abs(signed_area_flux(patch(region, seed, clip_to_mask), region, clip_to_mask));
}

double FieldModel::intensity_at(Point z0) const {
  const StarRegion probe = StarRegion::square(z0, 2.0);
  const PatchFields fields = patch(probe);
  const Bilinear v = bilinear(fields.direction.geometry, fields.integrand, fields.direction.active, z0);
  if (!v.ok) throw OutOfMask("point too close to the region of interest boundary");
  return std::abs(v.value);
}

ScalarGrid FieldModel::intensity_map() const {
  const GridGeometry& g = roi_.geometry();
  ScalarGrid mu(g, ScalarGrid::kExcluded);
  const auto& b = roi_.bounds();
  const std::size_t step = std::max<std::size_t>(1, options_.intensity_patch);
  for (std::size_t j0 = b.j_min; j0 <= b.j_max; j0 += step) {
    for (std::size_t i0 = b.i_min; i0 <= b.i_max; i0 += step) {
      const std::size_t i1 = std::min(i0 + step - 1, b.i_max);
      const std::size_t j1 = std::min(j0 + step - 1, b.j_max);
      const Point lo = g.center(i0, j0) - Point{0.5, 0.5};
      const Point hi = g.center(i1, j1) + Point{0.5, 0.5};
      const StarRegion tile = StarRegion::rectangle(lo, hi);
      PatchFields fields;
      try {
        fields = patch(tile, std::nullopt, true);
      } catch (const SingularityInPatch&) {
        continue;
      } catch (const EmptyPatch&) {
        continue;
      }
      const GridGeometry& wg = fields.direction.geometry;
      for (std::size_t j = j0; j <= j1; ++j) {
        for (std::size_t i = i0; i <= i1; ++i) {
          if (!roi_.inside(i, j)) continue;
          const auto px = wg.locate(g.center(i, j));
          if (!px) continue;
          const std::size_t k = wg.index(px->i, px->j);
          if (fields.direction.active[k]) mu.at(i, j) = std::abs(fields.integrand[k]);
        }
      }
    }
  }
  return mu;
}

DirectionField local_direction_field(const OrientationGrid& orientation, Vec2 seed_direction, const StarRegion& patch,
                                     const RegionOfInterest& roi, const FieldOptions& options) {
  const ScalarGrid unit(orientation.geometry(), 1.0);
  const FieldModel model(orientation, unit, roi, options);
  return model.patch(patch, seed_direction, true).direction;
}

ScalarGrid divergence(const DirectionField& field, double smoothing_sigma) {
  const GridGeometry& g = field.geometry;
  if (g.width < 3 || g.height < 3) throw DataError("divergence needs a raster of at least 3x3 pixels");
  std::vector<double> fx = masked_gaussian_smooth(g, field.fx, field.active, smoothing_sigma);
  std::vector<double> fy = masked_gaussian_smooth(g, field.fy, field.active, smoothing_sigma);
  for (std::size_t k = 0; k < fx.size(); ++k) {
    if (!field.active[k]) continue;
    const double len = std::hypot(fx[k], fy[k]);
    if (len > 0.0) {
      fx[k] /= len;
      fy[k] /= len;
    }
  }
  auto [dfx_dx, dfx_dy] = masked_gradient(g, fx, field.active);
  auto [dfy_dx, dfy_dy] = masked_gradient(g, fy, field.active);
  ScalarGrid out(g, ScalarGrid::kExcluded);
  for (std::size_t k = 0; k < fx.size(); ++k) {
    if (field.active[k]) out.values()[k] = dfx_dx[k] + dfy_dy[k];
  }
  return out;
}

ScalarGrid necessary_intensity(const OrientationGrid& orientation, const ScalarGrid& frequency,
                               const RegionOfInterest& roi, double smoothing_sigma) {
  if (!(smoothing_sigma > 0.0)) throw DataError("smoothing sigma must be positive");
  FieldOptions options;
  options.smoothing_sigma = smoothing_sigma;
  return FieldModel(orientation, frequency, roi, options).intensity_map();
}

double necessary_minutiae_number_boundary(const StarRegion& region, const OrientationGrid& orientation,
                                          const ScalarGrid& frequency, const RegionOfInterest& roi,
                                          const FieldOptions& options) {
  return FieldModel(orientation, frequency, roi, options).minutiae_number_boundary(region);
}

double necessary_minutiae_number_area(const StarRegion& region, const OrientationGrid& orientation,
                                      const ScalarGrid& frequency, const RegionOfInterest& roi,
                                      const FieldOptions& options) {
  return FieldModel(orientation, frequency, roi, options).minutiae_number_area(region);
}

std::vector<LimitCheckEntry> local_limit_check(Point z0, const OrientationGrid& orientation,
                                               const ScalarGrid& frequency, const RegionOfInterest& roi,
                                               const std::vector<double>& half_widths, const FieldOptions& options) {
  const FieldModel model(orientation, frequency, roi, options);
  const double mu0 = model.intensity_at(z0);
  std::vector<LimitCheckEntry> out;
  out.reserve(half_widths.size());
  for (double hw : half_widths) {
    const StarRegion square = StarRegion::square(z0, hw);
    const double m = model.minutiae_number_boundary(square);
    out.push_back({square.radius(), std::abs(m / square.area() - mu0)});
  }
  return out;
}

}  // namespace miseal
