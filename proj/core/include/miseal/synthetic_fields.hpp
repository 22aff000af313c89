#pragma once

#include <string_view>

#include "miseal/grid.hpp"

namespace miseal {

enum class SyntheticKind { constant, radial, tangential };

SyntheticKind parse_synthetic_kind(std::string_view name);

OrientationGrid constant_orientation(const GridGeometry& geometry, double theta);
/// θ(z) = angle of z - center (mod π); direction z/|z| about the center.
OrientationGrid radial_orientation(const GridGeometry& geometry, Point center);
/// Perpendicular to the radial field: direction (y, -x)/|z| about the center.
OrientationGrid tangential_orientation(const GridGeometry& geometry, Point center);

ScalarGrid constant_frequency(const GridGeometry& geometry, double phi);
/// Φ(z) = base + <gradient, z - anchor>.
ScalarGrid linear_frequency(const GridGeometry& geometry, double base, Vec2 gradient, Point anchor);

struct SyntheticFields {
  OrientationGrid orientation;
  ScalarGrid frequency;
  RegionOfInterest roi;
};

/// Square raster of the given size with a full mask and constant ridge
/// distance; radial and tangential fields are centred at `center`.
SyntheticFields make_synthetic_fields(SyntheticKind kind, std::size_t size, Point center, double ridge_distance,
                                      double theta = 0.0);

}  // namespace miseal
