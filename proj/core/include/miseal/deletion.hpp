#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "miseal/miseal_sampler.hpp"

namespace miseal {

/// Similarity score S(ζ1, ζ2) in [0, 1].
using MatchScorer = std::function<double(std::span<const Point>, std::span<const Point>)>;

/// Greedy one-to-one matching by increasing distance within `radius`;
/// 2·matches / (n1 + n2), and 0 when both patterns are empty. A positional
/// stand-in for a real fingerprint matcher.
double greedy_match_score(std::span<const Point> a, std::span<const Point> b, double radius = 15.0);
MatchScorer greedy_match_scorer(double radius = 15.0);

struct Histogram {
  double bin_width = 0.0;
  std::vector<double> centers;
  std::vector<std::size_t> counts;
};

/// Freedman-Diaconis bins; a single bin when the spread is zero.
Histogram freedman_diaconis_histogram(std::span<const double> values);

struct DeletionRecord {
  double score_necessary = 0.0;  // S(n): posterior-random points deleted
  double score_random = 0.0;     // S(r): as many uniformly chosen points deleted
  bool failed = false;
};

struct DeletionReport {
  std::vector<DeletionRecord> records;
  std::size_t failures = 0;
  double share = 0.0;  // fraction with S(n) > S(r)
  double share_se = 0.0;
  double mean_relative_difference = 0.0;  // mean of (S(n) - S(r)) / S(r)
  double relative_difference_se = 0.0;
  std::size_t zero_random_scores = 0;  // replicates left out of the relative mean
  std::vector<double> relative_differences;
  Histogram histogram;
};

/// Repeats: draw a joint label sample for each pattern uniformly from its
/// stored samples, delete the label-0 points (giving ζ(i,n)), delete the same
/// number of uniformly chosen points (giving ζ(i,r)), and score both pairs.
/// A scorer that throws or leaves [0, 1] fails that replicate only.
DeletionReport deletion_experiment(const PointPattern& zeta1, const PointPattern& zeta2, const LabelSamples& trace1,
                                   const LabelSamples& trace2, const MatchScorer& scorer, std::size_t replicates,
                                   Rng& rng);

}  // namespace miseal
