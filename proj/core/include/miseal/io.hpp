#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "miseal/deletion.hpp"
#include "miseal/dependence.hpp"
#include "miseal/grid.hpp"
#include "miseal/miseal_sampler.hpp"
#include "miseal/pcf.hpp"
#include "miseal/point_pattern.hpp"
#include "miseal/regression.hpp"
#include "miseal/simulation_study.hpp"

namespace miseal {

enum class GridKind : std::uint8_t { orientation = 0, scalar = 1, mask = 2 };

/// Raster as stored on disk; NaN marks excluded pixels.
struct FieldGridFile {
  GridKind kind = GridKind::scalar;
  std::size_t width = 0;
  std::size_t height = 0;
  double pixel_size = 1.0;
  std::vector<double> values;  // row-major, x fastest

  GridGeometry geometry() const { return {width, height, pixel_size, {0.0, 0.0}}; }
};

/// Grids above this many cells are written in the binary variant.
inline constexpr std::size_t kBinaryGridThreshold = 4'000'000;

/// Reads the text format or, by magic, the binary variant.
FieldGridFile read_field_grid(const std::string& path);
FieldGridFile read_field_grid(std::istream& in);
void write_field_grid(const std::string& path, const FieldGridFile& grid, std::optional<bool> binary = std::nullopt);
void write_field_grid(std::ostream& out, const FieldGridFile& grid, bool binary = false);

FieldGridFile to_file(const OrientationGrid& g);
FieldGridFile to_file(const ScalarGrid& g);
FieldGridFile to_file(const RegionOfInterest& roi);
OrientationGrid to_orientation(const FieldGridFile& f);
ScalarGrid to_scalar(const FieldGridFile& f);
RegionOfInterest to_roi(const FieldGridFile& f);

/// Point list with optional labels; -1 stands for `?` or no label.
struct PointsFile {
  std::vector<Point> points;
  std::vector<int> labels;
};

PointsFile read_points(const std::string& path);
PointsFile read_points(std::istream& in);
void write_points(const std::string& path, const PointsFile& file);
void write_points(std::ostream& out, const PointsFile& file);

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_trace(std::istream& in);
void write_labels(std::ostream& out, const PointPattern& zeta, const std::vector<double>& frequency);
std::vector<double> read_labels(std::istream& in);
void write_label_samples(std::ostream& out, const LabelSamples& samples);
LabelSamples read_label_samples(std::istream& in);

void write_pcf(std::ostream& out, const PcfCurve& curve);
void write_pcf(std::ostream& out, const PooledPcf& pooled);
void write_regression(std::ostream& out, const RegressionResult& r);
void write_histogram(std::ostream& out, const Histogram& h);
void write_dependence(std::ostream& out, const DependenceReport& r);
void write_deletion(std::ostream& out, const DeletionReport& r);
void write_study_report(std::ostream& out, const StudyReport& report);

/// 17 significant digits; NaN as `X`.
std::string format_double(double v);

}  // namespace miseal
