#include "miseal/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "miseal/errors.hpp"

namespace miseal {

ContingencyTable independence_expectation(const ContingencyTable& t) {
  const double n = t.total();
  if (n <= 0.0) return {};
  const double r0 = t.n00 + t.n01, r1 = t.n10 + t.n11;
  const double c0 = t.n00 + t.n10, c1 = t.n01 + t.n11;
  return {r0 * c0 / n, r0 * c1 / n, r1 * c0 / n, r1 * c1 / n};
}

double matthews_correlation(const ContingencyTable& t) {
  const double r0 = t.n00 + t.n01, r1 = t.n10 + t.n11;
  const double c0 = t.n00 + t.n10, c1 = t.n01 + t.n11;
  const double denom = r0 * r1 * c0 * c1;
  if (!(denom > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (t.n11 * t.n00 - t.n10 * t.n01) / std::sqrt(denom);
}

double kl_to_independence_bits(const ContingencyTable& t) {
  const double n = t.total();
  if (n <= 0.0) return 0.0;
  const auto e = independence_expectation(t);
  double kl = 0.0;
  const double obs[4] = {t.n00, t.n01, t.n10, t.n11};
  const double exp[4] = {e.n00, e.n01, e.n10, e.n11};
  for (int k = 0; k < 4; ++k)
    if (obs[k] > 0.0) kl += obs[k] / n * std::log2(obs[k] / exp[k]);
  return kl;
}

DependenceReport dependence_from_table(const ContingencyTable& t) {
  DependenceReport r;
  r.observed = t;
  r.expected = independence_expectation(t);
  r.kl_bits = kl_to_independence_bits(t);
  r.mean_correlation = matthews_correlation(t);
  r.correlation_se = std::numeric_limits<double>::quiet_NaN();
  return r;
}

namespace {

void add(ContingencyTable& t, std::uint8_t wi, std::uint8_t wj) {
  if (wi == 0 && wj == 0) t.n00 += 1;
  else if (wi == 0) t.n01 += 1;
  else if (wj == 0) t.n10 += 1;
  else t.n11 += 1;
}

}  // namespace

DependenceReport label_dependence_report(const LabelSamples& samples, std::size_t i, std::size_t j,
                                         std::size_t thin, std::size_t batches) {
  if (i == j) throw DataError("dependence pair must name two different points");
  if (i >= samples.point_count || j >= samples.point_count) throw DataError("point index out of range");
  if (thin == 0 || batches == 0) throw DataError("thinning and batch count must be positive");
  std::vector<std::size_t> rows;
  for (std::size_t s = 0; s < samples.count(); s += thin) rows.push_back(s);
  if (rows.size() < batches) throw DataError("fewer samples than batches");

  ContingencyTable total;
  for (auto s : rows) add(total, samples.row(s)[i], samples.row(s)[j]);
  if (total.n00 + total.n01 == 0 || total.n10 + total.n11 == 0 || total.n00 + total.n10 == 0 ||
      total.n01 + total.n11 == 0)
    throw DegenerateMarginal("a label is constant across the trace; correlation undefined");

  DependenceReport r = dependence_from_table(total);
  const std::size_t per = rows.size() / batches;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    ContingencyTable t;
    for (std::size_t k = b * per; k < (b + 1) * per; ++k) add(t, samples.row(rows[k])[i], samples.row(rows[k])[j]);
    const double c = matthews_correlation(t);
    r.batch_correlations.push_back(c);
    if (std::isnan(c)) continue;
    ++r.defined_batches;
    sum += c;
    sum2 += c * c;
  }
  const double m = static_cast<double>(r.defined_batches);
  if (r.defined_batches == 0) {
    r.mean_correlation = std::numeric_limits<double>::quiet_NaN();
    r.correlation_se = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.mean_correlation = sum / m;
    r.correlation_se =
        r.defined_batches > 1 ? std::sqrt(std::max(sum2 / m - r.mean_correlation * r.mean_correlation, 0.0) * m / (m - 1) / m)
                              : std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace miseal
