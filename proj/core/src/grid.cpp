#include "miseal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "miseal/errors.hpp"

namespace miseal {

std::optional<PixelIndex> GridGeometry::locate(Point p) const {
  const double fx = std::floor(p.x - origin.x + 0.5);
  const double fy = std::floor(p.y - origin.y + 0.5);
  if (!(fx >= 0.0) || !(fy >= 0.0)) return std::nullopt;
  if (fx >= static_cast<double>(width) || fy >= static_cast<double>(height)) return std::nullopt;
  return PixelIndex{static_cast<std::size_t>(fx), static_cast<std::size_t>(fy)};
}

RegionOfInterest::RegionOfInterest(GridGeometry geometry, std::vector<std::uint8_t> mask)
    : geometry_(geometry), mask_(std::move(mask)) {
  if (mask_.size() != geometry_.cell_count()) {
    throw GeometryMismatch("mask size " + std::to_string(mask_.size()) + " does not match " +
                           std::to_string(geometry_.width) + "x" + std::to_string(geometry_.height));
  }
  bounds_ = {geometry_.width, 0, geometry_.height, 0};
  for (std::size_t j = 0; j < geometry_.height; ++j) {
    for (std::size_t i = 0; i < geometry_.width; ++i) {
      auto& m = mask_[geometry_.index(i, j)];
      if (m == 0) continue;
      m = 1;
      ++pixel_count_;
      bounds_.i_min = std::min(bounds_.i_min, i);
      bounds_.i_max = std::max(bounds_.i_max, i);
      bounds_.j_min = std::min(bounds_.j_min, j);
      bounds_.j_max = std::max(bounds_.j_max, j);
    }
  }
  if (pixel_count_ == 0) throw DataError("region of interest is empty");
}

RegionOfInterest RegionOfInterest::full(std::size_t width, std::size_t height, double pixel_size) {
  GridGeometry g{width, height, pixel_size, {}};
  return RegionOfInterest(g, std::vector<std::uint8_t>(g.cell_count(), 1));
}

bool RegionOfInterest::contains(Point p) const {
  const auto px = geometry_.locate(p);
  return px && inside(px->i, px->j);
}

ScalarGrid::ScalarGrid(GridGeometry geometry, double fill)
    : geometry_(geometry), values_(geometry.cell_count(), fill) {}

ScalarGrid::ScalarGrid(GridGeometry geometry, std::vector<double> values)
    : geometry_(geometry), values_(std::move(values)) {
  if (values_.size() != geometry_.cell_count()) throw GeometryMismatch("scalar grid size mismatch");
}

bool ScalarGrid::excluded(std::size_t i, std::size_t j) const { return is_excluded(at(i, j)); }

double ScalarGrid::value_at(Point p) const {
  const auto px = geometry_.locate(p);
  return px ? at(px->i, px->j) : kExcluded;
}

OrientationGrid::OrientationGrid(GridGeometry geometry, std::vector<double> cos2theta,
                                 std::vector<double> sin2theta)
    : geometry_(geometry), cos2_(std::move(cos2theta)), sin2_(std::move(sin2theta)) {
  if (cos2_.size() != geometry_.cell_count() || sin2_.size() != geometry_.cell_count()) {
    throw GeometryMismatch("orientation grid size mismatch");
  }
}

OrientationGrid OrientationGrid::from_angles(GridGeometry geometry, std::span<const double> theta) {
  if (theta.size() != geometry.cell_count()) throw GeometryMismatch("orientation grid size mismatch");
  std::vector<double> c(theta.size());
  std::vector<double> s(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    c[k] = std::cos(2.0 * theta[k]);
    s[k] = std::sin(2.0 * theta[k]);
  }
  return OrientationGrid(geometry, std::move(c), std::move(s));
}

double OrientationGrid::angle(std::size_t i, std::size_t j) const {
  const std::size_t k = geometry_.index(i, j);
  double theta = 0.5 * std::atan2(sin2_[k], cos2_[k]);
  if (theta < 0.0) theta += kPi;
  if (theta >= kPi) theta -= kPi;
  return theta;
}

void OrientationGrid::normalize() {
  for (std::size_t k = 0; k < cos2_.size(); ++k) {
    const double n = std::hypot(cos2_[k], sin2_[k]);
    if (n > 0.0) {
      cos2_[k] /= n;
      sin2_[k] /= n;
    }
  }
}

std::vector<double> masked_gaussian_smooth(const GridGeometry& g, std::span<const double> values,
                                           std::span<const std::uint8_t> weight_mask, double sigma) {
  const std::size_t w = g.width;
  const std::size_t h = g.height;
  std::vector<double> num(g.cell_count(), 0.0);
  std::vector<double> den(g.cell_count(), 0.0);
  for (std::size_t k = 0; k < num.size(); ++k) {
    if (weight_mask[k] != 0 && !is_excluded(values[k])) {
      num[k] = values[k];
      den[k] = 1.0;
    }
  }
  std::vector<double> out(g.cell_count(), ScalarGrid::kExcluded);
  if (sigma <= 0.0) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (den[k] > 0.0) out[k] = num[k];
    }
    return out;
  }

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  for (int t = -radius; t <= radius; ++t) {
    kernel[t + radius] = std::exp(-0.5 * t * t / (sigma * sigma));
  }

  auto pass = [&](std::vector<double>& field, bool horizontal) {
    std::vector<double> tmp(field.size(), 0.0);
    for (std::size_t j = 0; j < h; ++j) {
      for (std::size_t i = 0; i < w; ++i) {
        double acc = 0.0;
        for (int t = -radius; t <= radius; ++t) {
          const long ii = static_cast<long>(i) + (horizontal ? t : 0);
          const long jj = static_cast<long>(j) + (horizontal ? 0 : t);
          if (ii < 0 || jj < 0 || ii >= static_cast<long>(w) || jj >= static_cast<long>(h)) continue;
          acc += kernel[t + radius] * field[g.index(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj))];
        }
        tmp[g.index(i, j)] = acc;
      }
    }
    field.swap(tmp);
  };
  pass(num, true);
  pass(num, false);
  pass(den, true);
  pass(den, false);

  for (std::size_t k = 0; k < out.size(); ++k) {
    if (weight_mask[k] != 0 && den[k] > 0.0) out[k] = num[k] / den[k];
  }
  return out;
}

}  // namespace miseal
