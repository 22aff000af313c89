#include "miseal/patches.hpp"

#include <algorithm>
#include <cmath>

#include "miseal/errors.hpp"

namespace miseal {

StarRegion Patch::region(const GridGeometry& g) const {
  const Point lo{g.origin.x + static_cast<double>(i0) - 0.5, g.origin.y + static_cast<double>(j0) - 0.5};
  const Point hi{g.origin.x + static_cast<double>(i1) + 0.5, g.origin.y + static_cast<double>(j1) + 0.5};
  return StarRegion::rectangle(lo, hi);
}

PatchGrid PatchGrid::make(const RegionOfInterest& roi, std::size_t target) {
  if (target == 0) throw DataError("patch target must be positive");
  const auto& b = roi.bounds();
  const std::size_t w = b.i_max - b.i_min + 1;
  const std::size_t h = b.j_max - b.j_min + 1;
  const double aspect = static_cast<double>(w) / static_cast<double>(h);
  PatchGrid grid;
  grid.columns = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(target) * aspect))), 1, w);
  grid.rows = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::lround(static_cast<double>(target) / static_cast<double>(grid.columns))), 1, h);
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t c = 0; c < grid.columns; ++c) {
      Patch p;
      p.i0 = b.i_min + c * w / grid.columns;
      p.i1 = b.i_min + (c + 1) * w / grid.columns - 1;
      p.j0 = b.j_min + r * h / grid.rows;
      p.j1 = b.j_min + (r + 1) * h / grid.rows - 1;
      for (std::size_t j = p.j0; j <= p.j1; ++j)
        for (std::size_t i = p.i0; i <= p.i1; ++i) p.area += roi.inside(i, j) ? 1.0 : 0.0;
      if (p.area > 0.0) grid.patches.push_back(p);
    }
  }
  return grid;
}

double PatchGrid::mean_area() const {
  if (patches.empty()) return 0.0;
  double s = 0.0;
  for (const auto& p : patches) s += p.area;
  return s / static_cast<double>(patches.size());
}

std::vector<PatchCount> patch_counts(const PointPattern& minutiae, const FieldModel& fields, PatchGrid& grid) {
  const auto& roi = fields.roi();
  const auto& g = roi.geometry();
  std::vector<PatchCount> out;
  for (auto& p : grid.patches) {
    double m;
    try {
      m = fields.minutiae_number_area(p.region(g), std::nullopt, true);
    } catch (const SingularityInPatch&) {
      p.excluded = true;
      continue;
    } catch (const EmptyPatch&) {
      p.excluded = true;
      continue;
    }
    PatchCount pc{p, m, 0};
    for (const auto& z : minutiae.points) {
      const auto px = g.locate(z);
      if (px && roi.inside(px->i, px->j) && p.contains_pixel(px->i, px->j)) ++pc.count;
    }
    out.push_back(pc);
  }
  return out;
}

}  // namespace miseal
