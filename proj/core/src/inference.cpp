#include "miseal/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "miseal/errors.hpp"
#include "miseal/strauss_sampler.hpp"

namespace miseal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_gamma_prior(double x, double shape, double rate) {
  if (!(x > 0.0)) return kNegInf;
  return (shape - 1.0) * std::log(x) - rate * x;
}

double log_beta_prior(double x, double p, double q) {
  if (!(x > 0.0) || !(x < 1.0)) return kNegInf;
  return (p - 1.0) * std::log(x) + (q - 1.0) * std::log1p(-x);
}

double log_label_prior(std::span<const std::uint8_t> labels, double p_w) {
  std::size_t ones = 0;
  for (auto w : labels) ones += w != 0;
  return log_power(p_w, ones) + log_power(1.0 - p_w, labels.size() - ones);
}

double log_theta_prior(const Theta& t, const Priors& pr) {
  return log_gamma_prior(t.lambda, pr.a0, pr.b0) + log_gamma_prior(t.beta, pr.a1, pr.b1) +
         log_beta_prior(t.gamma, pr.p1, pr.q1);
}

// NaN arises from ∞ - ∞ in degenerate corners; treat it as a reject.
bool accept(double log_h, Rng& rng) {
  if (std::isnan(log_h)) return false;
  if (log_h >= 0.0) return true;
  return std::log(rng.uniform()) < log_h;
}

}  // namespace

double Priors::label_probability(double lambda0, double area, std::size_t k) {
  if (k == 0) return 0.0;
  return std::max(1.0 - lambda0 * area / static_cast<double>(k), 0.0);
}

Priors Priors::defaults(double area, std::size_t k, double lambda0) {
  Priors p;
  p.lambda0 = lambda0;
  p.b0 = p.a0 / lambda0;
  p.p_w = label_probability(lambda0, area, k);
  return p;
}

void Priors::validate() const {
  if (!(a0 > 0 && b0 > 0 && a1 > 0 && b1 > 0 && p1 > 0 && q1 > 0))
    throw DataError("prior hyperparameters must be positive");
  if (!(p_w >= 0.0 && p_w <= 1.0)) throw DataError("label prior probability must lie in [0, 1]");
}

void ProposalSettings::validate() const {
  if (!(sigma1 > 0 && sigma2 > 0)) throw DataError("proposal scales must be positive");
  if (!(rho12 > -1.0 && rho12 < 1.0)) throw DataError("proposal correlation must lie in (-1, 1)");
  if (!(p_theta >= 0 && p_theta <= 1 && p_lambda >= 0 && p_lambda <= 1))
    throw DataError("move probabilities must lie in [0, 1]");
}

std::vector<Point> necessary_points(std::span<const Point> zeta, std::span<const std::uint8_t> labels) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < zeta.size(); ++i)
    if (labels[i]) out.push_back(zeta[i]);
  return out;
}

bool labels_feasible(std::span<const Point> zeta, std::span<const std::uint8_t> labels, double hard_core) {
  const auto eta = necessary_points(zeta, labels);
  return min_pair_distance(eta) > hard_core;
}

double log_prior_ratio(const Theta& to, std::span<const std::uint8_t> to_labels, const Theta& from,
                       std::span<const std::uint8_t> from_labels, const Priors& priors, std::span<const Point> zeta,
                       double hard_core) {
  if (!labels_feasible(zeta, to_labels, hard_core)) return kNegInf;
  return (log_theta_prior(to, priors) - log_theta_prior(from, priors)) +
         (log_label_prior(to_labels, priors.p_w) - log_label_prior(from_labels, priors.p_w));
}

double gibbs_update_lambda(std::size_t random_count, double area, const Priors& priors, Rng& rng) {
  return rng.gamma(priors.a0 + static_cast<double>(random_count), priors.b0 + area);
}

BetaGammaProposal propose_beta_gamma(double beta, double gamma, const ProposalSettings& s, Rng& rng) {
  const double z1 = rng.normal();
  const double z2 = rng.normal();
  const double step1 = s.sigma1 * z1;
  const double step2 = s.sigma2 * (s.rho12 * z1 + std::sqrt(1.0 - s.rho12 * s.rho12) * z2);
  return {beta * std::exp(step1), gamma * std::exp(step2), step1 + step2};
}

SeparationProblem::SeparationProblem(const PointPattern& z, std::shared_ptr<const ScalarGrid> mu,
                                     const RegionOfInterest& r, InteractionRadii rad, Priors pr)
    : zeta(&z), trend(std::move(mu)), roi(&r), radii(rad), priors(pr) {
  radii.validate();
  priors.validate();
  if (!trend) throw DataError("missing trend grid");
  if (!(trend->geometry() == roi->geometry())) throw GeometryMismatch("trend grid and mask differ in geometry");
  point_trend.reserve(zeta->size());
  for (const auto& p : zeta->points) {
    const double m = trend->value_at(p);
    point_trend.push_back(is_excluded(m) || m < 0.0 ? ScalarGrid::kExcluded : m);
  }
}

ModelParams SeparationProblem::strauss_params(double beta, double gamma) const {
  ModelParams p;
  p.beta = beta;
  p.gamma = gamma;
  p.radii = radii;
  p.trend = trend;
  return p;
}

double log_hastings_beta_gamma(const Theta& from, const Theta& to, std::span<const Point> eta,
                               std::span<const Point> aux_from, std::span<const Point> aux_to,
                               const Theta& aux_params, const SeparationProblem& problem) {
  if (!(to.gamma < 1.0) || !(to.gamma > 0.0) || !(to.beta > 0.0)) return kNegInf;
  const auto g_from = problem.strauss_params(from.beta, from.gamma);
  const auto g_to = problem.strauss_params(to.beta, to.gamma);
  const auto phi = problem.strauss_params(aux_params.beta, aux_params.gamma);
  const auto& pr = problem.priors;
  const double log_phi = log_strauss_density_unnorm(aux_to, phi) - log_strauss_density_unnorm(aux_from, phi);
  const double log_target = log_strauss_density_unnorm(eta, g_to) - log_strauss_density_unnorm(eta, g_from);
  const double log_prior = (log_gamma_prior(to.beta, pr.a1, pr.b1) - log_gamma_prior(from.beta, pr.a1, pr.b1)) +
                           (log_beta_prior(to.gamma, pr.p1, pr.q1) - log_beta_prior(from.gamma, pr.p1, pr.q1));
  const double log_aux = log_strauss_density_unnorm(aux_from, g_from) - log_strauss_density_unnorm(aux_to, g_to);
  const double log_q = (std::log(to.beta) - std::log(from.beta)) + (std::log(to.gamma) - std::log(from.gamma));
  return log_phi + log_target + log_prior + log_aux + log_q;
}

double log_hastings_flip(std::size_t i, const Theta& theta, std::span<const std::uint8_t> labels,
                         const SeparationProblem& problem) {
  const auto& zeta = problem.zeta->points;
  const double mu = problem.point_trend[i];
  const Point z = zeta[i];
  std::size_t t = 0;
  for (std::size_t j = 0; j < zeta.size(); ++j) {
    if (j == i || !labels[j]) continue;
    const double d2 = squared_distance(z, zeta[j]);
    if (labels[i] == 0 && d2 <= problem.radii.hard_core * problem.radii.hard_core) return kNegInf;
    if (d2 <= problem.radii.interaction * problem.radii.interaction) ++t;
  }
  const double p_w = problem.priors.p_w;
  // log of [β(z) γ^t / λ] · [p_w / (1 - p_w)], the 0 -> 1 direction.
  double up;
  if (is_excluded(mu) || mu == 0.0 || theta.beta == 0.0)
    up = kNegInf;
  else
    up = std::log(theta.beta * mu) + log_power(theta.gamma, t) - std::log(theta.lambda) + std::log(p_w) -
         std::log1p(-p_w);
  return labels[i] ? -up : up;
}

void update_lambda(ChainState& state, const SeparationProblem& problem, Rng& rng) {
  std::size_t random_count = 0;
  for (auto w : state.labels) random_count += w == 0;
  state.theta.lambda = gibbs_update_lambda(random_count, problem.zeta->area, problem.priors, rng);
  ++state.lambda_moves.proposed;
  ++state.lambda_moves.accepted;
}

bool update_beta_gamma_aux(ChainState& state, const SeparationProblem& problem, const ProposalSettings& settings,
                           Rng& rng) {
  ++state.beta_gamma_moves.proposed;
  const auto prop = propose_beta_gamma(state.theta.beta, state.theta.gamma, settings, rng);
  if (!(prop.gamma < 1.0)) return false;
  Theta to = state.theta;
  to.beta = prop.beta;
  to.gamma = prop.gamma;
  const auto params = problem.strauss_params(to.beta, to.gamma);
  std::vector<Point> aux;
  StraussSampler sampler(params, *problem.roi);
  sampler.run(aux, settings.aux_chain_steps, rng);
  const auto eta = necessary_points(problem.zeta->points, state.labels);
  const double log_h =
      log_hastings_beta_gamma(state.theta, to, eta, state.aux_pattern, aux, state.aux_params, problem);
  if (!accept(log_h, rng)) return false;
  state.theta = to;
  state.aux_pattern = std::move(aux);
  ++state.beta_gamma_moves.accepted;
  return true;
}

bool update_label_flip(ChainState& state, const SeparationProblem& problem, Rng& rng) {
  ++state.flip_moves.proposed;
  if (state.labels.empty()) return false;
  const std::size_t i = rng.index(state.labels.size());
  const double log_h = log_hastings_flip(i, state.theta, state.labels, problem);
  if (!accept(log_h, rng)) return false;
  state.labels[i] ^= 1;
  ++state.flip_moves.accepted;
  return true;
}

LabelVector initial_labels(const SeparationProblem& problem) {
  const auto& zeta = problem.zeta->points;
  const double h2 = problem.radii.hard_core * problem.radii.hard_core;
  LabelVector labels(zeta.size(), 0);
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    const double mu = problem.point_trend[i];
    if (is_excluded(mu) || mu <= 0.0) continue;
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j)
      if (labels[j] && squared_distance(zeta[i], zeta[j]) <= h2) ok = false;
    labels[i] = ok ? 1 : 0;
  }
  return labels;
}

}  // namespace miseal
