#include "miseal/strauss_sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "miseal/errors.hpp"

namespace miseal {

Point uniform_point_in_mask(const RegionOfInterest& roi, Rng& rng) {
  const auto& b = roi.bounds();
  const GridGeometry& g = roi.geometry();
  const Point lo = g.center(b.i_min, b.j_min) - Point{0.5, 0.5};
  const Point hi = g.center(b.i_max, b.j_max) + Point{0.5, 0.5};
  while (true) {
    const Point p{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
    if (roi.contains(p)) return p;
  }
}

PointPattern sample_poisson(const RegionOfInterest& roi, double lambda, Rng& rng) {
  if (lambda < 0.0) throw DataError("Poisson intensity must be non-negative");
  PointPattern out{{}, roi.area()};
  const std::uint64_t n = rng.poisson(lambda * roi.area());
  out.points.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) out.points.push_back(uniform_point_in_mask(roi, rng));
  return out;
}

PointPattern sample_poisson(const RegionOfInterest& roi, double lambda, std::uint64_t seed) {
  Rng rng(seed);
  return sample_poisson(roi, lambda, rng);
}

double trend_integral(const ScalarGrid& trend, const RegionOfInterest& roi) {
  if (!(trend.geometry() == roi.geometry())) throw GeometryMismatch("trend and mask rasters disagree");
  double total = 0.0;
  const auto mask = roi.mask();
  const auto values = trend.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (mask[k] && !is_excluded(values[k]) && values[k] > 0.0) total += values[k];
  }
  return total;
}

StraussSampler::StraussSampler(const ModelParams& params, const RegionOfInterest& roi)
    : params_(params),
      roi_(roi),
      log_gamma_(std::log(params.gamma)),
      move_sigma_(0.5 * params.radii.interaction) {
  params.radii.validate();
  if (!params.trend) throw DegenerateTrend("Strauss sampler needs a trend");
}

std::size_t StraussSampler::default_steps(const ModelParams& params, const RegionOfInterest& roi) {
  const double mass = params.beta * trend_integral(*params.trend, roi);
  // Relative slack keeps representation error from bumping ⌈·⌉ by one.
  return std::max<std::size_t>(10000, 50 * static_cast<std::size_t>(std::ceil(mass * (1.0 - 1e-12))));
}

void StraussSampler::run(std::vector<Point>& state, std::size_t steps, Rng& rng) {
  for (std::size_t s = 0; s < steps; ++s) {
    step(state, rng);
#ifndef NDEBUG
    assert(min_pair_distance(state) > params_.radii.hard_core);
#endif
  }
}

void StraussSampler::step(std::vector<Point>& state, Rng& rng) {
  const double h2 = params_.radii.hard_core * params_.radii.hard_core;
  const double r2 = params_.radii.interaction * params_.radii.interaction;
  const double area = roi_.area();

  // Number of R-close points to z among state (skipping index `skip`);
  // returns -1 on a hard-core violation.
  auto close_count = [&](Point z, std::size_t skip) -> long {
    long t = 0;
    for (std::size_t k = 0; k < state.size(); ++k) {
      if (k == skip) continue;
      const double d2 = squared_distance(z, state[k]);
      if (d2 <= h2) return -1;
      if (d2 <= r2) ++t;
    }
    return t;
  };
  auto gamma_term = [&](long t) { return t == 0 ? 0.0 : static_cast<double>(t) * log_gamma_; };

  const double u = rng.uniform();
  const std::size_t n = state.size();
  if (u < 1.0 / 3.0) {
    ++counts_.births_proposed;
    const Point z = uniform_point_in_mask(roi_, rng);
    const double b = params_.activity(z);
    if (!(b > 0.0)) return;
    const long t = close_count(z, n);
    if (t < 0) return;
    const double log_ratio = std::log(b) + gamma_term(t) + std::log(area / static_cast<double>(n + 1));
    if (std::log(rng.uniform()) < log_ratio) {
      state.push_back(z);
      ++counts_.births_accepted;
    }
  } else if (u < 2.0 / 3.0) {
    ++counts_.deaths_proposed;
    if (n == 0) return;
    const std::size_t i = rng.index(n);
    const long t = close_count(state[i], i);
    const double b = params_.activity(state[i]);
    const double log_ratio = std::log(static_cast<double>(n) / area) - std::log(b) - gamma_term(std::max(t, 0L));
    if (std::log(rng.uniform()) < log_ratio) {
      state[i] = state.back();
      state.pop_back();
      ++counts_.deaths_accepted;
    }
  } else {
    ++counts_.moves_proposed;
    if (n == 0) return;
    const std::size_t i = rng.index(n);
    const Point from = state[i];
    const Point to{from.x + move_sigma_ * rng.normal(), from.y + move_sigma_ * rng.normal()};
    if (!roi_.contains(to)) return;
    const double b_to = params_.activity(to);
    if (!(b_to > 0.0)) return;
    const long t_to = close_count(to, i);
    if (t_to < 0) return;
    const long t_from = close_count(from, i);
    const double log_ratio =
        std::log(b_to) + gamma_term(t_to) - std::log(params_.activity(from)) - gamma_term(std::max(t_from, 0L));
    if (std::log(rng.uniform()) < log_ratio) {
      state[i] = to;
      ++counts_.moves_accepted;
    }
  }
}

PointPattern sample_strauss_hardcore(const ModelParams& params, const RegionOfInterest& roi, std::size_t steps,
                                     Rng& rng) {
  if (steps < 1) throw DataError("Strauss sampler needs at least one step");
  if (!params.trend || !(trend_integral(*params.trend, roi) > 0.0)) {
    throw DegenerateTrend("trend is zero or excluded everywhere on the mask");
  }
  StraussSampler sampler(params, roi);
  PointPattern out{{}, roi.area()};
  sampler.run(out.points, steps, rng);
  return out;
}

PointPattern sample_strauss_hardcore(const ModelParams& params, const RegionOfInterest& roi, std::size_t steps,
                                     std::uint64_t seed) {
  Rng rng(seed);
  return sample_strauss_hardcore(params, roi, steps, rng);
}

}  // namespace miseal
