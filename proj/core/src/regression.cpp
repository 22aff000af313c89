#include "miseal/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "miseal/errors.hpp"

namespace miseal {

namespace {

double log_lik(std::span<const PatchObservation> d, double b0, double b1) {
  double ll = 0.0;
  for (const auto& o : d) {
    const double mu = b0 + b1 * o.m;
    if (o.count > 0.0) {
      if (!(mu > 0.0)) return -std::numeric_limits<double>::infinity();
      ll += o.count * std::log(mu);
    }
    ll -= mu;
  }
  return ll;
}

bool feasible(std::span<const PatchObservation> d, double b0, double b1) {
  for (const auto& o : d)
    if (!(b0 + b1 * o.m > 0.0)) return false;
  return true;
}

double barrier_objective(std::span<const PatchObservation> d, double b0, double b1, double tau) {
  double f = 0.0;
  for (const auto& o : d) {
    const double mu = b0 + b1 * o.m;
    f += (o.count + tau) * std::log(mu) - mu;
  }
  return f;
}

}  // namespace

RegressionResult poisson_regression_identity(std::span<const PatchObservation> data) {
  if (data.size() < 3) throw DataError("regression needs at least three patches");
  double m_min = data[0].m, m_max = data[0].m, y_sum = 0.0, m_sum = 0.0;
  for (const auto& o : data) {
    if (!std::isfinite(o.m) || !std::isfinite(o.count) || o.count < 0.0)
      throw DataError("regression data must be finite with non-negative counts");
    m_min = std::min(m_min, o.m);
    m_max = std::max(m_max, o.m);
    y_sum += o.count;
    m_sum += o.m;
  }
  if (m_min == m_max) throw DataError("regression needs at least two distinct m values");
  if (y_sum == 0.0) throw Separation("all counts are zero");
  const double n = static_cast<double>(data.size());

  // Least-squares start, replaced by a flat line when it is not strictly positive.
  const double mbar = m_sum / n, ybar = y_sum / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& o : data) {
    sxx += (o.m - mbar) * (o.m - mbar);
    sxy += (o.m - mbar) * (o.count - ybar);
  }
  double b1 = sxy / sxx, b0 = ybar - b1 * mbar;
  if (!feasible(data, b0, b1)) {
    b0 = ybar;
    b1 = 0.0;
  }

  int total_iterations = 0;
  for (double tau = 1.0;; tau *= 0.1) {
    bool converged = false;
    for (int it = 0; it < 200; ++it, ++total_iterations) {
      // Score and barrier-augmented Fisher information.
      double g0 = 0, g1 = 0, i00 = 0, i01 = 0, i11 = 0;
      for (const auto& o : data) {
        const double mu = b0 + b1 * o.m;
        const double r = (o.count + tau) / mu - 1.0;
        g0 += r;
        g1 += r * o.m;
        const double w = 1.0 / mu + tau / (mu * mu);
        i00 += w;
        i01 += w * o.m;
        i11 += w * o.m * o.m;
      }
      const double det = i00 * i11 - i01 * i01;
      if (!(det > 0.0)) throw NonConvergence("singular information matrix in regression");
      const double d0 = (i11 * g0 - i01 * g1) / det;
      const double d1 = (i00 * g1 - i01 * g0) / det;
      const double f_old = barrier_objective(data, b0, b1, tau);
      double step = 1.0;
      double nb0 = b0 + d0, nb1 = b1 + d1;
      while (step > 1e-12 && (!feasible(data, nb0, nb1) || barrier_objective(data, nb0, nb1, tau) < f_old - 1e-12)) {
        step *= 0.5;
        nb0 = b0 + step * d0;
        nb1 = b1 + step * d1;
      }
      if (step <= 1e-12) {
        converged = true;  // no ascent direction left at machine precision
        break;
      }
      const double change = std::abs(nb0 - b0) + std::abs(nb1 - b1);
      b0 = nb0;
      b1 = nb1;
      if (change < 1e-12 * (1.0 + std::abs(b0) + std::abs(b1))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NonConvergence("Fisher scoring did not converge");
    if (tau <= 1e-8 * 1.0000001) break;
  }

  RegressionResult r;
  r.intercept = b0;
  r.slope = b1;
  r.iterations = total_iterations;
  r.data.assign(data.begin(), data.end());
  r.log_likelihood = log_lik(data, b0, b1);

  // Observed information Σ y / μ² x xᵀ.
  double j00 = 0, j01 = 0, j11 = 0;
  for (const auto& o : data) {
    const double mu = b0 + b1 * o.m;
    const double w = o.count / (mu * mu);
    j00 += w;
    j01 += w * o.m;
    j11 += w * o.m * o.m;
  }
  const double det = j00 * j11 - j01 * j01;
  if (!(det > 0.0)) throw NonConvergence("observed information is singular");
  r.intercept_se = std::sqrt(j11 / det);
  r.slope_se = std::sqrt(j00 / det);
  constexpr double z = 1.959963984540054;
  r.intercept_lower = b0 - z * r.intercept_se;
  r.intercept_upper = b0 + z * r.intercept_se;
  r.slope_lower = b1 - z * r.slope_se;
  r.slope_upper = b1 + z * r.slope_se;

  // Restricted fit through the origin: b1 = Σy / Σm.
  double ll0 = -std::numeric_limits<double>::infinity();
  if (m_sum > 0.0) ll0 = log_lik(data, 0.0, y_sum / m_sum);
  if (!std::isfinite(ll0)) {
    r.p_value_intercept = b0 > 0.0 ? 0.0 : 1.0;
  } else {
    const double lr = std::max(2.0 * (r.log_likelihood - ll0), 0.0);
    const double signed_root = (b0 > 0.0 ? 1.0 : -1.0) * std::sqrt(lr);
    r.p_value_intercept = 0.5 * std::erfc(signed_root / std::sqrt(2.0));
  }
  return r;
}

}  // namespace miseal
