#include "miseal/synthetic_fields.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "miseal/errors.hpp"

namespace miseal {
namespace {

template <class AngleFn>
OrientationGrid from_angle_fn(const GridGeometry& g, AngleFn fn) {
  std::vector<double> theta(g.cell_count());
  for (std::size_t j = 0; j < g.height; ++j) {
    for (std::size_t i = 0; i < g.width; ++i) theta[g.index(i, j)] = fn(g.center(i, j));
  }
  return OrientationGrid::from_angles(g, theta);
}

}  // namespace

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "constant") return SyntheticKind::constant;
  if (name == "radial") return SyntheticKind::radial;
  if (name == "tangential") return SyntheticKind::tangential;
  throw DataError("unknown synthetic field kind '" + std::string(name) + "'");
}

OrientationGrid constant_orientation(const GridGeometry& g, double theta) {
  return from_angle_fn(g, [theta](Point) { return theta; });
}

OrientationGrid radial_orientation(const GridGeometry& g, Point center) {
  return from_angle_fn(g, [center](Point z) { return std::atan2(z.y - center.y, z.x - center.x); });
}

OrientationGrid tangential_orientation(const GridGeometry& g, Point center) {
  return from_angle_fn(g, [center](Point z) { return std::atan2(z.y - center.y, z.x - center.x) + kPi / 2.0; });
}

ScalarGrid constant_frequency(const GridGeometry& g, double phi) { return ScalarGrid(g, phi); }

ScalarGrid linear_frequency(const GridGeometry& g, double base, Vec2 gradient, Point anchor) {
  ScalarGrid out(g);
  for (std::size_t j = 0; j < g.height; ++j) {
    for (std::size_t i = 0; i < g.width; ++i) out.at(i, j) = base + dot(gradient, g.center(i, j) - anchor);
  }
  return out;
}

SyntheticFields make_synthetic_fields(SyntheticKind kind, std::size_t size, Point center, double ridge_distance,
                                      double theta) {
  if (size < 3) throw DataError("synthetic raster must be at least 3 pixels wide");
  if (!(ridge_distance > 0.0)) throw DataError("ridge distance must be positive");
  RegionOfInterest roi = RegionOfInterest::full(size, size);
  const GridGeometry& g = roi.geometry();
  OrientationGrid of;
  switch (kind) {
    case SyntheticKind::constant: of = constant_orientation(g, theta); break;
    case SyntheticKind::radial: of = radial_orientation(g, center); break;
    case SyntheticKind::tangential: of = tangential_orientation(g, center); break;
  }
  return {std::move(of), constant_frequency(g, 1.0 / ridge_distance), std::move(roi)};
}

}  // namespace miseal
