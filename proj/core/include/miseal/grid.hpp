#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "miseal/geometry.hpp"

namespace miseal {

struct PixelIndex {
  std::size_t i = 0;  // column
  std::size_t j = 0;  // row
};

/// Raster layout shared by every grid. Pixel (i, j) has its center at
/// origin + (i, j); all computation is in pixel units. pixel_size is carried
/// as metadata for physical conversion only.
struct GridGeometry {
  std::size_t width = 0;
  std::size_t height = 0;
  double pixel_size = 1.0;
  Point origin{};

  std::size_t cell_count() const { return width * height; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * width + i; }
  Point center(std::size_t i, std::size_t j) const {
    return {origin.x + static_cast<double>(i), origin.y + static_cast<double>(j)};
  }
  /// Pixel whose unit cell contains p, if any.
  std::optional<PixelIndex> locate(Point p) const;

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

/// Binary mask of the region of interest.
class RegionOfInterest {
 public:
  RegionOfInterest() = default;
  RegionOfInterest(GridGeometry geometry, std::vector<std::uint8_t> mask);

  /// Mask covering the whole raster.
  static RegionOfInterest full(std::size_t width, std::size_t height, double pixel_size = 1.0);

  const GridGeometry& geometry() const { return geometry_; }
  std::span<const std::uint8_t> mask() const { return mask_; }
  bool inside(std::size_t i, std::size_t j) const { return mask_[geometry_.index(i, j)] != 0; }
  bool contains(Point p) const;

  std::size_t pixel_count() const { return pixel_count_; }
  /// |X| in pixel^2.
  double area() const { return static_cast<double>(pixel_count_); }

  /// Inclusive pixel bounds of the mask: {i_min, i_max, j_min, j_max}.
  struct Bounds {
    std::size_t i_min, i_max, j_min, j_max;
  };
  const Bounds& bounds() const { return bounds_; }

 private:
  GridGeometry geometry_{};
  std::vector<std::uint8_t> mask_;
  std::size_t pixel_count_ = 0;
  Bounds bounds_{};
};

/// Raster scalar field. Excluded pixels hold NaN and are never treated as zero.
class ScalarGrid {
 public:
  static constexpr double kExcluded = std::numeric_limits<double>::quiet_NaN();

  ScalarGrid() = default;
  explicit ScalarGrid(GridGeometry geometry, double fill = 0.0);
  ScalarGrid(GridGeometry geometry, std::vector<double> values);

  const GridGeometry& geometry() const { return geometry_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double at(std::size_t i, std::size_t j) const { return values_[geometry_.index(i, j)]; }
  double& at(std::size_t i, std::size_t j) { return values_[geometry_.index(i, j)]; }
  bool excluded(std::size_t i, std::size_t j) const;

  /// Value of the pixel containing p; kExcluded outside the raster.
  double value_at(Point p) const;

 private:
  GridGeometry geometry_{};
  std::vector<double> values_;
};

inline bool is_excluded(double v) { return v != v; }

/// Undirected orientation field stored as the doubled-angle vector
/// (cos 2θ, sin 2θ), which is invariant under θ -> θ + π.
class OrientationGrid {
 public:
  OrientationGrid() = default;
  OrientationGrid(GridGeometry geometry, std::vector<double> cos2theta, std::vector<double> sin2theta);

  static OrientationGrid from_angles(GridGeometry geometry, std::span<const double> theta);

  const GridGeometry& geometry() const { return geometry_; }
  std::span<const double> cos2theta() const { return cos2_; }
  std::span<const double> sin2theta() const { return sin2_; }

  /// Orientation angle in [0, π).
  double angle(std::size_t i, std::size_t j) const;

  /// Rescales every doubled-angle vector to unit length.
  void normalize();

 private:
  GridGeometry geometry_{};
  std::vector<double> cos2_;
  std::vector<double> sin2_;
};

/// Gaussian normalized convolution restricted to pixels with weight_mask != 0
/// (and non-NaN values). Kernel truncated at 3σ; σ = 0 copies the input.
/// Pixels outside the mask come back as NaN.
std::vector<double> masked_gaussian_smooth(const GridGeometry& geometry, std::span<const double> values,
                                           std::span<const std::uint8_t> weight_mask, double sigma);

}  // namespace miseal
