#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "miseal/geometry.hpp"
#include "miseal/grid.hpp"
#include "miseal/region.hpp"

namespace miseal {

struct FieldOptions {
  /// Gaussian σ (pixels) applied to (cos 2θ, sin 2θ) and Φ before differentiation.
  double smoothing_sigma = 8.0;
  /// Patches whose smoothed doubled-angle magnitude falls below this are singular.
  double coherence_threshold = 0.3;
  /// Patches with |div F| above this (per pixel) anywhere are singular.
  double max_divergence = 2.0;
  double boundary_step = 0.5;
  /// Subsamples per pixel edge for the area quadrature.
  int area_subsamples = 4;
  /// Tile edge (pixels) for the patchwise intensity map.
  std::size_t intensity_patch = 16;
};

/// Unit direction field F over a rectangular pixel window; inactive pixels
/// are outside the patch or the mask.
struct DirectionField {
  GridGeometry geometry;
  std::vector<std::uint8_t> active;
  std::vector<double> fx;
  std::vector<double> fy;

  Vec2 at(std::size_t i, std::size_t j) const {
    const std::size_t k = geometry.index(i, j);
    return {fx[k], fy[k]};
  }
};

/// Fields restricted to one patch with a consistent direction selection.
/// `integrand` holds the signed Φ div F + <∇Φ, F>.
struct PatchFields {
  DirectionField direction;
  std::vector<double> phi;
  std::vector<double> divergence;
  std::vector<double> integrand;
};

/// Central differences of a masked raster; one-sided where a neighbour is
/// inactive, zero when both are. Returns (d/dx, d/dy).
std::pair<std::vector<double>, std::vector<double>> masked_gradient(const GridGeometry& geometry,
                                                                    const std::vector<double>& values,
                                                                    const std::vector<std::uint8_t>& active);

/// Smoothed orientation/frequency fields over a region of interest. Holds
/// immutable precomputed rasters; every query is const and thread-safe.
class FieldModel {
 public:
  FieldModel(const OrientationGrid& orientation, const ScalarGrid& frequency, const RegionOfInterest& roi,
             FieldOptions options = {});

  const FieldOptions& options() const { return options_; }
  const RegionOfInterest& roi() const { return roi_; }

  /// Direction selection and divergence terms over the region (dilated by a
  /// margin for interpolation). Throws EmptyPatch, SingularityInPatch.
  PatchFields patch(const StarRegion& region, std::optional<Vec2> seed = std::nullopt,
                    bool clip_to_mask = false) const;

  /// Signed boundary flux ∮ Φ <F, n> by composite midpoint rule.
  double signed_boundary_flux(const PatchFields& fields, const StarRegion& region) const;
  /// Signed ∫_A Φ div F + <∇Φ, F> by subsampled pixel quadrature.
  double signed_area_flux(const PatchFields& fields, const StarRegion& region, bool clip_to_mask = false) const;

  double minutiae_number_boundary(const StarRegion& region, std::optional<Vec2> seed = std::nullopt) const;
  double minutiae_number_area(const StarRegion& region, std::optional<Vec2> seed = std::nullopt,
                              bool clip_to_mask = false) const;

  /// μ(z0) from a small patch around z0.
  double intensity_at(Point z0) const;
  /// Patchwise μ map; singular patches and out-of-mask pixels are excluded.
  ScalarGrid intensity_map() const;

 private:
  FieldOptions options_;
  RegionOfInterest roi_;
  std::vector<double> cos2_;      // smoothed doubled-angle vector
  std::vector<double> sin2_;
  std::vector<double> phi_;       // smoothed Φ
  std::vector<double> phi_dx_;
  std::vector<double> phi_dy_;
};

/// Continuous selection of directions of O over the patch, oriented so the
/// direction at the patch reference point agrees with seed_direction.
DirectionField local_direction_field(const OrientationGrid& orientation, Vec2 seed_direction,
                                     const StarRegion& patch, const RegionOfInterest& roi,
                                     const FieldOptions& options = {});

/// Divergence of a (pre-smoothed) direction field; inactive pixels excluded.
ScalarGrid divergence(const DirectionField& direction_field, double smoothing_sigma);

/// μ(z) = |Φ div F + <∇Φ, F>| computed patchwise.
ScalarGrid necessary_intensity(const OrientationGrid& orientation, const ScalarGrid& frequency,
                               const RegionOfInterest& roi, double smoothing_sigma);

/// m(A) = |∮ Φ <F, n>|.
double necessary_minutiae_number_boundary(const StarRegion& region, const OrientationGrid& orientation,
                                          const ScalarGrid& frequency, const RegionOfInterest& roi,
                                          const FieldOptions& options = {});

/// m(A) = |∫_A Φ div F + ∫_A <∇Φ, F>|.
double necessary_minutiae_number_area(const StarRegion& region, const OrientationGrid& orientation,
                                      const ScalarGrid& frequency, const RegionOfInterest& roi,
                                      const FieldOptions& options = {});

struct LimitCheckEntry {
  double region_radius;  // r(A)
  double error;          // |m(A)/|A| - μ(z0)|
};

/// Square patches of the given half-widths around z0.
std::vector<LimitCheckEntry> local_limit_check(Point z0, const OrientationGrid& orientation,
                                               const ScalarGrid& frequency, const RegionOfInterest& roi,
                                               const std::vector<double>& half_widths,
                                               const FieldOptions& options = {});

}  // namespace miseal
