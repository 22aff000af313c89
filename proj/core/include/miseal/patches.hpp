#pragma once

#include <cstddef>
#include <vector>

#include "miseal/field_model.hpp"
#include "miseal/point_pattern.hpp"

namespace miseal {

/// Pixel block [i0, i1] × [j0, j1] of the mask's bounding box.
struct Patch {
  std::size_t i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  double area = 0.0;  // mask pixels in the block
  bool excluded = false;

  StarRegion region(const GridGeometry& geometry) const;
  bool contains_pixel(std::size_t i, std::size_t j) const { return i >= i0 && i <= i1 && j >= j0 && j <= j1; }
};

/// Rectangular tiling of the mask's bounding box into roughly `target` blocks
/// of near-equal size; blocks without mask pixels are dropped.
struct PatchGrid {
  std::vector<Patch> patches;
  std::size_t columns = 0;
  std::size_t rows = 0;

  static PatchGrid make(const RegionOfInterest& roi, std::size_t target = 100);
  double mean_area() const;
};

struct PatchCount {
  Patch patch;
  double m = 0.0;
  std::size_t count = 0;
};

/// m(A) by the area form clipped to the mask, and the number of points whose
/// pixel lies in the patch. Singular patches are flagged in `grid` and skipped.
std::vector<PatchCount> patch_counts(const PointPattern& minutiae, const FieldModel& fields, PatchGrid& grid);

}  // namespace miseal
