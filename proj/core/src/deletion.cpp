#include "miseal/deletion.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <tuple>

#include "miseal/errors.hpp"

namespace miseal {

double greedy_match_score(std::span<const Point> a, std::span<const Point> b, double radius) {
  if (a.empty() && b.empty()) return 0.0;
  const double r2 = radius * radius;
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d2 = squared_distance(a[i], b[j]);
      if (d2 <= r2) pairs.emplace_back(d2, i, j);
    }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> used_a(a.size()), used_b(b.size());
  std::size_t matches = 0;
  for (const auto& [d2, i, j] : pairs) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    ++matches;
  }
  return 2.0 * static_cast<double>(matches) / static_cast<double>(a.size() + b.size());
}

MatchScorer greedy_match_scorer(double radius) {
  return [radius](std::span<const Point> a, std::span<const Point> b) { return greedy_match_score(a, b, radius); };
}

Histogram freedman_diaconis_histogram(std::span<const double> values) {
  Histogram h;
  if (values.empty()) return h;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto q = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  const double lo = v.front(), hi = v.back();
  double width = 2.0 * (q(0.75) - q(0.25)) / std::cbrt(static_cast<double>(v.size()));
  std::size_t bins = 1;
  if (hi > lo) {
    if (!(width > 0.0)) width = (hi - lo) / std::ceil(std::log2(static_cast<double>(v.size())) + 1.0);
    bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    bins = std::max<std::size_t>(bins, 1);
  } else {
    width = 1.0;
  }
  h.bin_width = width;
  h.counts.assign(bins, 0);
  for (std::size_t k = 0; k < bins; ++k) h.centers.push_back(lo + (static_cast<double>(k) + 0.5) * width);
  if (hi == lo) h.centers[0] = lo;
  for (double x : v) {
    auto k = hi > lo ? static_cast<std::size_t>((x - lo) / width) : 0;
    h.counts[std::min(k, bins - 1)] += 1;
  }
  return h;
}

namespace {

std::vector<Point> keep_labelled(const PointPattern& z, std::span<const std::uint8_t> labels) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (labels[i]) out.push_back(z.points[i]);
  return out;
}

std::vector<Point> delete_uniform(const PointPattern& z, std::size_t remove, Rng& rng) {
  std::vector<std::size_t> idx(z.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng.engine());
  idx.resize(z.size() - remove);
  std::sort(idx.begin(), idx.end());
  std::vector<Point> out;
  for (auto i : idx) out.push_back(z.points[i]);
  return out;
}

double checked_score(const MatchScorer& scorer, std::span<const Point> a, std::span<const Point> b) {
  double s;
  try {
    s = scorer(a, b);
  } catch (const std::exception& e) {
    throw ScorerFailure(e.what());
  }
  if (!(s >= 0.0 && s <= 1.0)) throw ScorerFailure("score outside [0, 1]");
  return s;
}

double mean_se(const std::vector<double>& x, double& se) {
  const double n = static_cast<double>(x.size());
  if (x.empty()) {
    se = 0.0;
    return 0.0;
  }
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  se = x.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return m;
}

}  // namespace

DeletionReport deletion_experiment(const PointPattern& zeta1, const PointPattern& zeta2, const LabelSamples& trace1,
                                   const LabelSamples& trace2, const MatchScorer& scorer, std::size_t replicates,
                                   Rng& rng) {
  if (trace1.point_count != zeta1.size() || trace2.point_count != zeta2.size())
    throw DataError("label samples do not match the patterns");
  if (trace1.count() == 0 || trace2.count() == 0) throw DataError("deletion needs joint label samples");
  DeletionReport rep;
  std::vector<double> wins;
  for (std::size_t r = 0; r < replicates; ++r) {
    const auto w1 = trace1.row(rng.index(trace1.count()));
    const auto w2 = trace2.row(rng.index(trace2.count()));
    const auto n1 = keep_labelled(zeta1, w1);
    const auto n2 = keep_labelled(zeta2, w2);
    const auto r1 = delete_uniform(zeta1, zeta1.size() - n1.size(), rng);
    const auto r2 = delete_uniform(zeta2, zeta2.size() - n2.size(), rng);
    DeletionRecord rec;
    try {
      rec.score_necessary = checked_score(scorer, n1, n2);
      rec.score_random = checked_score(scorer, r1, r2);
    } catch (const ScorerFailure&) {
      rec.failed = true;
      ++rep.failures;
      rep.records.push_back(rec);
      continue;
    }
    rep.records.push_back(rec);
    wins.push_back(rec.score_necessary > rec.score_random ? 1.0 : 0.0);
    if (rec.score_random > 0.0)
      rep.relative_differences.push_back((rec.score_necessary - rec.score_random) / rec.score_random);
    else
      ++rep.zero_random_scores;
  }
  rep.share = mean_se(wins, rep.share_se);
  rep.mean_relative_difference = mean_se(rep.relative_differences, rep.relative_difference_se);
  rep.histogram = freedman_diaconis_histogram(rep.relative_differences);
  return rep;
}

}  // namespace miseal
