#pragma once

#include <variant>
#include <vector>

#include "miseal/geometry.hpp"

namespace miseal {

struct AxisRectangle {
  Point lo;
  Point hi;
};

/// {z : |angle(z - center, direction)| <= half_angle, inner <= |z - center| <= outer}.
struct AnnularSector {
  Point center;
  double direction = 0.0;  // angle of the symmetry axis, radians
  double half_angle = 0.0;
  double inner = 0.0;
  double outer = 0.0;
};

/// Simple polygon, star-shaped with respect to `reference`.
struct StarPolygon {
  std::vector<Point> vertices;
  Point reference;
};

/// Piece of a discretized boundary: midpoint, outward unit normal, length.
struct BoundaryElement {
  Point midpoint;
  Vec2 normal;
  double length = 0.0;
};

struct BoundingBox {
  Point lo;
  Point hi;
};

/// Compact star-shaped region A with piecewise smooth boundary.
class StarRegion {
 public:
  using Shape = std::variant<AxisRectangle, AnnularSector, StarPolygon>;

  static StarRegion rectangle(Point lo, Point hi);
  static StarRegion square(Point center, double half_width);
  static StarRegion sector(Point center, double direction, double half_angle, double inner, double outer);
  static StarRegion polygon(std::vector<Point> vertices, Point reference);

  const Shape& shape() const { return shape_; }

  /// Point z0 the region is star-shaped with respect to.
  Point reference() const;
  bool contains(Point p) const;
  double area() const;
  /// r(A) = sup over A of |z - z0|.
  double radius() const;
  BoundingBox bounds() const;

  /// Counter-clockwise boundary split into elements no longer than max_step.
  std::vector<BoundaryElement> boundary(double max_step) const;

 private:
  explicit StarRegion(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

}  // namespace miseal
