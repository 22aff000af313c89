#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "miseal/point_pattern.hpp"

namespace miseal {

/// First-order intensity used to normalize the PCF: an intensity map
/// (clipped below at 1e-6), a positive constant, or, when neither is given,
/// the unbiased homogeneous estimate λ² ≈ n(n-1)/|X|².
struct PcfIntensity {
  double constant = 0.0;
  const ScalarGrid* map = nullptr;
};

struct PcfCurve {
  std::vector<double> r;
  std::vector<double> g;
  std::size_t point_count = 0;
};

/// 0.15 / sqrt(n / |X|), the Epanechnikov half-width rule.
double default_pcf_bandwidth(std::size_t n, double area);

/// Kernel estimate (Epanechnikov, half-width `bandwidth`; <= 0 selects the
/// default rule) with translation edge correction on the mask bounding box.
/// Throws TooFewPoints for fewer than two points.
PcfCurve pcf_estimate(const PointPattern& pattern, const RegionOfInterest& roi, const PcfIntensity& intensity,
                      std::span<const double> r_grid, double bandwidth = 0.0);

struct PooledPcf {
  std::vector<double> r;
  std::vector<double> g;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Weighted mean curve with a pointwise mean ± 1.96 sd/√m band. Empty
/// weights select n(p)². Throws DataError on mismatched r grids.
PooledPcf pcf_pool(std::span<const PcfCurve> curves, std::span<const double> weights = {});

}  // namespace miseal
