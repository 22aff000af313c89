#include "miseal/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "miseal/errors.hpp"

namespace miseal {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double signed_area(const std::vector<Point>& v) {
  double a = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Point& p = v[k];
    const Point& q = v[(k + 1) % v.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

Point polar(Point center, double rho, double phi) {
  return {center.x + rho * std::cos(phi), center.y + rho * std::sin(phi)};
}

// Angle of v relative to `direction`, wrapped to (-π, π].
double relative_angle(Vec2 v, double direction) {
  double a = std::atan2(v.y, v.x) - direction;
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

void append_segment(std::vector<BoundaryElement>& out, Point a, Point b, double max_step) {
  const Vec2 d = b - a;
  const double len = norm(d);
  if (len == 0.0) return;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / max_step)));
  const Vec2 normal{d.y / len, -d.x / len};  // outward for counter-clockwise traversal
  const double piece = len / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    out.push_back({a + t * d, normal, piece});
  }
}

// Arc from phi0 to phi1 (either orientation); outward_sign = +1 for radial outward normal.
void append_arc(std::vector<BoundaryElement>& out, Point center, double rho, double phi0, double phi1,
                double outward_sign, double max_step) {
  const double sweep = phi1 - phi0;
  const double len = std::abs(sweep) * rho;
  if (len == 0.0) return;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / max_step)));
  const double piece = len / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = phi0 + sweep * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    const Vec2 radial{std::cos(phi), std::sin(phi)};
    out.push_back({polar(center, rho, phi), outward_sign * radial, piece});
  }
}

}  // namespace

StarRegion StarRegion::rectangle(Point lo, Point hi) {
  if (!(hi.x > lo.x) || !(hi.y > lo.y)) throw DataError("rectangle must have positive extent");
  return StarRegion(AxisRectangle{lo, hi});
}

StarRegion StarRegion::square(Point center, double half_width) {
  return rectangle({center.x - half_width, center.y - half_width}, {center.x + half_width, center.y + half_width});
}

StarRegion StarRegion::sector(Point center, double direction, double half_angle, double inner, double outer) {
  if (!(half_angle >= 0.0 && half_angle <= kPi / 2.0)) throw DataError("sector half angle must lie in [0, pi/2]");
  if (!(inner > 0.0 && inner < outer)) throw DataError("sector radii must satisfy 0 < r < R");
  return StarRegion(AnnularSector{center, direction, half_angle, inner, outer});
}

StarRegion StarRegion::polygon(std::vector<Point> vertices, Point reference) {
  if (vertices.size() < 3) throw DataError("polygon needs at least three vertices");
  if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  StarRegion r(StarPolygon{std::move(vertices), reference});
  if (!r.contains(reference)) throw DataError("polygon reference point lies outside the polygon");
  return r;
}

Point StarRegion::reference() const {
  return std::visit(Overloaded{
                        [](const AxisRectangle& r) { return 0.5 * (r.lo + r.hi); },
                        [](const AnnularSector& s) { return polar(s.center, 0.5 * (s.inner + s.outer), s.direction); },
                        [](const StarPolygon& p) { return p.reference; },
                    },
                    shape_);
}

bool StarRegion::contains(Point z) const {
  return std::visit(Overloaded{
                        [&](const AxisRectangle& r) {
                          return z.x >= r.lo.x && z.x <= r.hi.x && z.y >= r.lo.y && z.y <= r.hi.y;
                        },
                        [&](const AnnularSector& s) {
                          const Vec2 v = z - s.center;
                          const double rho = norm(v);
                          if (rho < s.inner || rho > s.outer) return false;
                          return std::abs(relative_angle(v, s.direction)) <= s.half_angle;
                        },
                        [&](const StarPolygon& p) {
                          bool in = false;
                          const auto& v = p.vertices;
                          for (std::size_t a = 0, b = v.size() - 1; a < v.size(); b = a++) {
                            if ((v[a].y > z.y) != (v[b].y > z.y) &&
                                z.x < (v[b].x - v[a].x) * (z.y - v[a].y) / (v[b].y - v[a].y) + v[a].x) {
                              in = !in;
                            }
                          }
                          return in;
                        },
                    },
                    shape_);
}

double StarRegion::area() const {
  return std::visit(Overloaded{
                        [](const AxisRectangle& r) { return (r.hi.x - r.lo.x) * (r.hi.y - r.lo.y); },
                        [](const AnnularSector& s) { return s.half_angle * (s.outer * s.outer - s.inner * s.inner); },
                        [](const StarPolygon& p) { return signed_area(p.vertices); },
                    },
                    shape_);
}

double StarRegion::radius() const {
  const Point z0 = reference();
  return std::visit(
      Overloaded{
          [&](const AxisRectangle& r) {
            const double dx = std::max(z0.x - r.lo.x, r.hi.x - z0.x);
            const double dy = std::max(z0.y - r.lo.y, r.hi.y - z0.y);
            return std::hypot(dx, dy);
          },
          [&](const AnnularSector& s) {
            // Extreme points are corners or the outer arc's far side.
            double best = 0.0;
            for (double phi : {s.direction - s.half_angle, s.direction + s.half_angle}) {
              best = std::max(best, distance(z0, polar(s.center, s.inner, phi)));
              best = std::max(best, distance(z0, polar(s.center, s.outer, phi)));
            }
            return best;
          },
          [&](const StarPolygon& p) {
            double best = 0.0;
            for (const Point& v : p.vertices) best = std::max(best, distance(z0, v));
            return best;
          },
      },
      shape_);
}

BoundingBox StarRegion::bounds() const {
  return std::visit(Overloaded{
                        [](const AxisRectangle& r) { return BoundingBox{r.lo, r.hi}; },
                        [](const AnnularSector& s) {
                          BoundingBox b{{1e300, 1e300}, {-1e300, -1e300}};
                          auto grow = [&](Point p) {
                            b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y)};
                            b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y)};
                          };
                          const int n = 64;
                          for (int k = 0; k <= n; ++k) {
                            const double phi = s.direction - s.half_angle + 2.0 * s.half_angle * k / n;
                            grow(polar(s.center, s.inner, phi));
                            grow(polar(s.center, s.outer, phi));
                          }
                          // Sampled arcs can miss an axis extreme by a hair; pad.
                          b.lo = b.lo - Point{0.5, 0.5};
                          b.hi = b.hi + Point{0.5, 0.5};
                          return b;
                        },
                        [](const StarPolygon& p) {
                          BoundingBox b{p.vertices.front(), p.vertices.front()};
                          for (const Point& v : p.vertices) {
                            b.lo = {std::min(b.lo.x, v.x), std::min(b.lo.y, v.y)};
                            b.hi = {std::max(b.hi.x, v.x), std::max(b.hi.y, v.y)};
                          }
                          return b;
                        },
                    },
                    shape_);
}

std::vector<BoundaryElement> StarRegion::boundary(double max_step) const {
  if (!(max_step > 0.0)) throw std::invalid_argument("boundary step must be positive");
  std::vector<BoundaryElement> out;
  std::visit(Overloaded{
                 [&](const AxisRectangle& r) {
                   const Point a = r.lo;
                   const Point b{r.hi.x, r.lo.y};
                   const Point c = r.hi;
                   const Point d{r.lo.x, r.hi.y};
                   append_segment(out, a, b, max_step);
                   append_segment(out, b, c, max_step);
                   append_segment(out, c, d, max_step);
                   append_segment(out, d, a, max_step);
                 },
                 [&](const AnnularSector& s) {
                   const double lo = s.direction - s.half_angle;
                   const double hi = s.direction + s.half_angle;
                   append_arc(out, s.center, s.outer, lo, hi, +1.0, max_step);
                   append_segment(out, polar(s.center, s.outer, hi), polar(s.center, s.inner, hi), max_step);
                   append_arc(out, s.center, s.inner, hi, lo, -1.0, max_step);
                   append_segment(out, polar(s.center, s.inner, lo), polar(s.center, s.outer, lo), max_step);
                 },
                 [&](const StarPolygon& p) {
                   const auto& v = p.vertices;
                   for (std::size_t k = 0; k < v.size(); ++k) append_segment(out, v[k], v[(k + 1) % v.size()], max_step);
                 },
             },
             shape_);
  return out;
}

}  // namespace miseal
