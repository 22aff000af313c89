#pragma once

#include <cstddef>
#include <vector>

#include "miseal/miseal_sampler.hpp"

namespace miseal {

/// 2×2 counts; first index is W_i, second W_j.
struct ContingencyTable {
  double n00 = 0, n01 = 0, n10 = 0, n11 = 0;

  double total() const { return n00 + n01 + n10 + n11; }
};

/// Expected counts under independence with the observed margins.
ContingencyTable independence_expectation(const ContingencyTable& t);
/// Matthews (phi) coefficient; NaN when a margin is empty.
double matthews_correlation(const ContingencyTable& t);
/// KL divergence of the joint from the product of its marginals, in bits.
double kl_to_independence_bits(const ContingencyTable& t);

struct DependenceReport {
  ContingencyTable observed;
  ContingencyTable expected;
  double kl_bits = 0.0;
  std::vector<double> batch_correlations;  // NaN for batches with a constant label
  double mean_correlation = 0.0;
  double correlation_se = 0.0;
  std::size_t defined_batches = 0;
};

/// Table-only report (no batches).
DependenceReport dependence_from_table(const ContingencyTable& t);

/// Pair (i, j) over every `thin`-th stored label sample, split into
/// `batches` contiguous batches. Throws DegenerateMarginal when either label
/// is constant over the whole trace.
DependenceReport label_dependence_report(const LabelSamples& samples, std::size_t i, std::size_t j,
                                         std::size_t thin = 1, std::size_t batches = 10);

}  // namespace miseal
