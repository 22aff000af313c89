#include "miseal/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "miseal/errors.hpp"

namespace miseal {

namespace {

constexpr char kBinaryMagic[8] = {'F', 'G', 'R', 'I', 'D', 'B', '0', '1'};

std::ifstream open_in(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

double parse_double(const std::string& tok) {
  if (tok == "X") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  const auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError("bad number '" + tok + "'");
  return v;
}

std::size_t parse_size(const std::string& tok) {
  std::size_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError("bad count '" + tok + "'");
  return v;
}

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError(std::string("unexpected end of input reading ") + what);
  return tok;
}

void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input, expected " + header);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ParseError("expected header '" + header + "', got '" + line + "'");
}

const char* kind_name(GridKind k) {
  switch (k) {
    case GridKind::orientation: return "orientation";
    case GridKind::scalar: return "scalar";
    case GridKind::mask: return "mask";
  }
  return "scalar";
}

GridKind parse_kind(const std::string& s) {
  if (s == "orientation") return GridKind::orientation;
  if (s == "scalar") return GridKind::scalar;
  if (s == "mask") return GridKind::mask;
  throw ParseError("unknown grid kind '" + s + "'");
}

const char* move_name(MoveType m) {
  switch (m) {
    case MoveType::lambda: return "lambda";
    case MoveType::beta_gamma: return "beta_gamma";
    case MoveType::flip: return "flip";
  }
  return "flip";
}

MoveType parse_move(const std::string& s) {
  if (s == "lambda") return MoveType::lambda;
  if (s == "beta_gamma") return MoveType::beta_gamma;
  if (s == "flip") return MoveType::flip;
  throw ParseError("unknown move type '" + s + "'");
}

template <class T>
void put_le(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little, "binary grids assume a little-endian host");
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get_le(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw ParseError("truncated binary grid");
  return v;
}

void validate_values(const FieldGridFile& f) {
  for (double v : f.values) {
    if (std::isnan(v)) continue;
    if (f.kind == GridKind::mask && v != 0.0 && v != 1.0) throw ParseError("mask values must be 0 or 1");
    if (f.kind == GridKind::orientation && !(v >= 0.0 && v < kPi)) throw ParseError("orientation outside [0, pi)");
    if (!std::isfinite(v)) throw ParseError("non-finite grid value");
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "X";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

FieldGridFile read_field_grid(std::istream& in) {
  char magic[8] = {};
  in.read(magic, 8);
  FieldGridFile f;
  if (in.gcount() == 8 && std::memcmp(magic, kBinaryMagic, 8) == 0) {
    f.width = get_le<std::uint64_t>(in);
    f.height = get_le<std::uint64_t>(in);
    f.pixel_size = get_le<double>(in);
    const auto kind = get_le<std::uint8_t>(in);
    if (kind > 2) throw ParseError("unknown binary grid kind");
    f.kind = static_cast<GridKind>(kind);
    const auto count = get_le<std::uint64_t>(in);
    if (count != f.width * f.height) throw ParseError("binary grid size does not match its dimensions");
    f.values.resize(count);
    if (!in.read(reinterpret_cast<char*>(f.values.data()), static_cast<std::streamsize>(count * sizeof(double))))
      throw ParseError("truncated binary grid");
  } else {
    in.clear();
    in.seekg(0);
    expect_header(in, "FIELDGRID v1");
    f.width = parse_size(next_token(in, "width"));
    f.height = parse_size(next_token(in, "height"));
    f.pixel_size = parse_double(next_token(in, "pixel size"));
    f.kind = parse_kind(next_token(in, "kind"));
    f.values.resize(f.width * f.height);
    for (auto& v : f.values) v = parse_double(next_token(in, "grid value"));
    std::string extra;
    if (in >> extra) throw ParseError("trailing data after grid values");
  }
  if (f.width == 0 || f.height == 0) throw ParseError("grid dimensions must be positive");
  if (!(f.pixel_size > 0.0)) throw ParseError("pixel size must be positive");
  validate_values(f);
  return f;
}

FieldGridFile read_field_grid(const std::string& path) {
  auto in = open_in(path, true);
  return read_field_grid(in);
}

void write_field_grid(std::ostream& out, const FieldGridFile& f, bool binary) {
  if (binary) {
    out.write(kBinaryMagic, 8);
    put_le<std::uint64_t>(out, f.width);
    put_le<std::uint64_t>(out, f.height);
    put_le<double>(out, f.pixel_size);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(f.kind));
    put_le<std::uint64_t>(out, f.values.size());
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    return;
  }
  out << "FIELDGRID v1\n" << f.width << ' ' << f.height << ' ' << format_double(f.pixel_size) << '\n'
      << kind_name(f.kind) << '\n';
  for (std::size_t j = 0; j < f.height; ++j) {
    for (std::size_t i = 0; i < f.width; ++i) {
      const double v = f.values[j * f.width + i];
      if (i) out << ' ';
      if (f.kind == GridKind::mask && !std::isnan(v)) out << (v != 0.0 ? '1' : '0');
      else out << format_double(v);
    }
    out << '\n';
  }
}

void write_field_grid(const std::string& path, const FieldGridFile& f, std::optional<bool> binary) {
  const bool bin = binary.value_or(f.values.size() > kBinaryGridThreshold);
  auto out = open_out(path, bin);
  write_field_grid(out, f, bin);
  if (!out) throw DataError("failed writing " + path);
}

FieldGridFile to_file(const OrientationGrid& g) {
  FieldGridFile f{GridKind::orientation, g.geometry().width, g.geometry().height, g.geometry().pixel_size, {}};
  for (std::size_t j = 0; j < f.height; ++j)
    for (std::size_t i = 0; i < f.width; ++i) f.values.push_back(g.angle(i, j));
  return f;
}

FieldGridFile to_file(const ScalarGrid& g) {
  const auto& geo = g.geometry();
  return {GridKind::scalar, geo.width, geo.height, geo.pixel_size, {g.values().begin(), g.values().end()}};
}

FieldGridFile to_file(const RegionOfInterest& roi) {
  const auto& geo = roi.geometry();
  FieldGridFile f{GridKind::mask, geo.width, geo.height, geo.pixel_size, {}};
  for (auto m : roi.mask()) f.values.push_back(m ? 1.0 : 0.0);
  return f;
}

OrientationGrid to_orientation(const FieldGridFile& f) {
  if (f.kind != GridKind::orientation) throw DataError("expected an orientation grid");
  return OrientationGrid::from_angles(f.geometry(), f.values);
}

ScalarGrid to_scalar(const FieldGridFile& f) {
  if (f.kind != GridKind::scalar) throw DataError("expected a scalar grid");
  return ScalarGrid(f.geometry(), f.values);
}

RegionOfInterest to_roi(const FieldGridFile& f) {
  if (f.kind != GridKind::mask) throw DataError("expected a mask grid");
  std::vector<std::uint8_t> mask;
  mask.reserve(f.values.size());
  for (double v : f.values) mask.push_back(v == 1.0 ? 1 : 0);
  return RegionOfInterest(f.geometry(), std::move(mask));
}

namespace {

std::string trimmed_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return line;
  }
  throw ParseError(std::string("unexpected end of input reading ") + what);
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream s(line);
  std::vector<std::string> out;
  std::string tok;
  while (s >> tok) out.push_back(tok);
  return out;
}

void expect_end(std::istream& in) {
  std::string extra;
  if (in >> extra) throw ParseError("trailing data: '" + extra + "'");
}

}  // namespace

PointsFile read_points(std::istream& in) {
  expect_header(in, "POINTS v1");
  const auto count_tok = split(trimmed_line(in, "point count"));
  if (count_tok.size() != 1) throw ParseError("point count line must hold one integer");
  const std::size_t n = parse_size(count_tok[0]);
  PointsFile f;
  for (std::size_t k = 0; k < n; ++k) {
    const auto tok = split(trimmed_line(in, "point"));
    if (tok.size() != 2 && tok.size() != 3) throw ParseError("point lines hold 'x y [label]'");
    const Point p{parse_double(tok[0]), parse_double(tok[1])};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ParseError("non-finite coordinate");
    int label = -1;
    if (tok.size() == 3) {
      if (tok[2] == "0") label = 0;
      else if (tok[2] == "1") label = 1;
      else if (tok[2] != "?") throw ParseError("label must be 0, 1 or ?");
    }
    f.points.push_back(p);
    f.labels.push_back(label);
  }
  expect_end(in);
  return f;
}

PointsFile read_points(const std::string& path) {
  auto in = open_in(path);
  return read_points(in);
}

void write_points(std::ostream& out, const PointsFile& f) {
  out << "POINTS v1\n" << f.points.size() << '\n';
  const bool any_label = std::any_of(f.labels.begin(), f.labels.end(), [](int l) { return l >= 0; });
  for (std::size_t k = 0; k < f.points.size(); ++k) {
    out << format_double(f.points[k].x) << ' ' << format_double(f.points[k].y);
    if (any_label) {
      const int l = k < f.labels.size() ? f.labels[k] : -1;
      out << ' ' << (l == 0 ? "0" : l == 1 ? "1" : "?");
    }
    out << '\n';
  }
}

void write_points(const std::string& path, const PointsFile& f) {
  auto out = open_out(path);
  write_points(out, f);
  if (!out) throw DataError("failed writing " + path);
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
  out << "TRACE v1\n";
  for (const auto& r : records)
    out << r.t << ' ' << format_double(r.lambda) << ' ' << format_double(r.beta) << ' ' << format_double(r.gamma)
        << ' ' << move_name(r.move) << ' ' << (r.accepted ? 1 : 0) << '\n';
}

std::vector<TraceRecord> read_trace(std::istream& in) {
  expect_header(in, "TRACE v1");
  std::vector<TraceRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto tok = split(line);
    if (tok.empty()) continue;
    if (tok.size() != 6) throw ParseError("trace lines hold 't lambda beta gamma move accepted'");
    if (tok[5] != "0" && tok[5] != "1") throw ParseError("accepted flag must be 0 or 1");
    out.push_back({parse_size(tok[0]), parse_double(tok[1]), parse_double(tok[2]), parse_double(tok[3]),
                   parse_move(tok[4]), tok[5] == "1"});
  }
  return out;
}

void write_labels(std::ostream& out, const PointPattern& zeta, const std::vector<double>& frequency) {
  out << "LABELS v1\n";
  for (std::size_t i = 0; i < zeta.size(); ++i)
    out << i << ' ' << format_double(zeta.points[i].x) << ' ' << format_double(zeta.points[i].y) << ' '
        << format_double(frequency[i]) << '\n';
}

std::vector<double> read_labels(std::istream& in) {
  expect_header(in, "LABELS v1");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto tok = split(line);
    if (tok.empty()) continue;
    if (tok.size() != 4) throw ParseError("label lines hold 'i x y freq1'");
    if (parse_size(tok[0]) != out.size()) throw ParseError("label indices must be consecutive from 0");
    const double f = parse_double(tok[3]);
    if (!(f >= 0.0 && f <= 1.0)) throw ParseError("label frequency outside [0, 1]");
    out.push_back(f);
  }
  return out;
}

void write_label_samples(std::ostream& out, const LabelSamples& s) {
  out << "LABELSAMPLES v1\n" << s.point_count << ' ' << s.count() << '\n';
  for (std::size_t r = 0; r < s.count(); ++r) {
    for (auto w : s.row(r)) out << (w ? '1' : '0');
    out << '\n';
  }
}

LabelSamples read_label_samples(std::istream& in) {
  expect_header(in, "LABELSAMPLES v1");
  const auto tok = split(trimmed_line(in, "sample dimensions"));
  if (tok.size() != 2) throw ParseError("expected 'points samples'");
  LabelSamples s;
  s.point_count = parse_size(tok[0]);
  const std::size_t rows = parse_size(tok[1]);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string row = s.point_count == 0 ? std::string() : split(trimmed_line(in, "label sample")).at(0);
    if (row.size() != s.point_count) throw ParseError("label sample has the wrong length");
    for (char c : row) {
      if (c != '0' && c != '1') throw ParseError("label samples hold only 0 and 1");
      s.flat.push_back(c == '1');
    }
  }
  expect_end(in);
  return s;
}

void write_pcf(std::ostream& out, const PcfCurve& c) {
  out << "# r g\n";
  for (std::size_t k = 0; k < c.r.size(); ++k) out << format_double(c.r[k]) << ' ' << format_double(c.g[k]) << '\n';
}

void write_pcf(std::ostream& out, const PooledPcf& p) {
  out << "# r g lower upper\n";
  for (std::size_t k = 0; k < p.r.size(); ++k)
    out << format_double(p.r[k]) << ' ' << format_double(p.g[k]) << ' ' << format_double(p.lower[k]) << ' '
        << format_double(p.upper[k]) << '\n';
}

void write_regression(std::ostream& out, const RegressionResult& r) {
  out << "intercept=" << format_double(r.intercept) << '\n'
      << "intercept_se=" << format_double(r.intercept_se) << '\n'
      << "intercept_ci_lower=" << format_double(r.intercept_lower) << '\n'
      << "intercept_ci_upper=" << format_double(r.intercept_upper) << '\n'
      << "slope=" << format_double(r.slope) << '\n'
      << "slope_se=" << format_double(r.slope_se) << '\n'
      << "slope_ci_lower=" << format_double(r.slope_lower) << '\n'
      << "slope_ci_upper=" << format_double(r.slope_upper) << '\n'
      << "p_value_intercept=" << format_double(r.p_value_intercept) << '\n'
      << "log_likelihood=" << format_double(r.log_likelihood) << '\n'
      << "patches=" << r.data.size() << '\n';
}

void write_histogram(std::ostream& out, const Histogram& h) {
  out << "# bin_width " << format_double(h.bin_width) << '\n';
  for (std::size_t k = 0; k < h.centers.size(); ++k) out << format_double(h.centers[k]) << ' ' << h.counts[k] << '\n';
}

void write_dependence(std::ostream& out, const DependenceReport& r) {
  const auto& o = r.observed;
  const auto& e = r.expected;
  out << "observed=" << format_double(o.n00) << ' ' << format_double(o.n01) << ' ' << format_double(o.n10) << ' '
      << format_double(o.n11) << '\n'
      << "expected=" << format_double(e.n00) << ' ' << format_double(e.n01) << ' ' << format_double(e.n10) << ' '
      << format_double(e.n11) << '\n'
      << "kl_bits=" << format_double(r.kl_bits) << '\n'
      << "correlation_mean=" << format_double(r.mean_correlation) << '\n'
      << "correlation_se=" << format_double(r.correlation_se) << '\n'
      << "batches=" << r.batch_correlations.size() << '\n'
      << "defined_batches=" << r.defined_batches << '\n';
}

void write_deletion(std::ostream& out, const DeletionReport& r) {
  out << "replicates=" << r.records.size() << '\n'
      << "failures=" << r.failures << '\n'
      << "share=" << format_double(r.share) << '\n'
      << "share_se=" << format_double(r.share_se) << '\n'
      << "mean_relative_difference=" << format_double(r.mean_relative_difference) << '\n'
      << "relative_difference_se=" << format_double(r.relative_difference_se) << '\n'
      << "zero_random_scores=" << r.zero_random_scores << '\n'
      << "histogram_bin_width=" << format_double(r.histogram.bin_width) << '\n';
}

namespace {

void write_summary(std::ostream& out, const char* name, const ParameterSummary& s) {
  out << name << "_truth=" << format_double(s.truth) << '\n'
      << name << "_mean=" << format_double(s.mean) << '\n'
      << name << "_lower=" << format_double(s.lower) << '\n'
      << name << "_upper=" << format_double(s.upper) << '\n'
      << name << "_covered=" << (s.covered ? 1 : 0) << '\n';
}

}  // namespace

void write_study_report(std::ostream& out, const StudyReport& report) {
  for (const auto& r : report.replicates) {
    out << "REPLICATE " << r.index << '\n'
        << "field_set=" << r.field_set << '\n'
        << "seed=" << r.seed << '\n'
        << "random_points=" << r.random_points << '\n'
        << "necessary_points=" << r.necessary_points << '\n';
    write_summary(out, "lambda", r.lambda);
    write_summary(out, "beta", r.beta);
    write_summary(out, "gamma", r.gamma);
    out << "random_recovered=" << format_double(r.random_recovered) << '\n'
        << "necessary_recovered=" << format_double(r.necessary_recovered) << '\n'
        << "acceptance_lambda=" << format_double(r.lambda_acceptance) << '\n'
        << "acceptance_beta_gamma=" << format_double(r.beta_gamma_acceptance) << '\n'
        << "acceptance_flip=" << format_double(r.flip_acceptance) << '\n'
        << "END\n";
  }
  out << "SUMMARY\n"
      << "replicates=" << report.replicates.size() << '\n'
      << "lambda_covered=" << report.covered(&ReplicateReport::lambda) << '\n'
      << "beta_covered=" << report.covered(&ReplicateReport::beta) << '\n'
      << "gamma_covered=" << report.covered(&ReplicateReport::gamma) << '\n'
      << "beta_overestimated=" << report.overestimated(&ReplicateReport::beta) << '\n'
      << "END\n";
}

}  // namespace miseal
