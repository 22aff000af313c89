#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "miseal/point_pattern.hpp"
#include "miseal/rng.hpp"

namespace miseal {

/// Gamma(a0, b0) on λ, Gamma(a1, b1) on β, Beta(p1, q1) on γ and i.i.d.
/// Bernoulli(p_w) labels.
struct Priors {
  double a0 = 5.0;
  double b0 = 5.0e4;
  double a1 = 5.0;
  double b1 = 5.0;
  double p1 = 2.0;
  double q1 = 5.0;
  double p_w = 0.5;
  double lambda0 = 1.0e-4;

  /// Defaults with b0 = 5/λ0 and p_w = max(1 - λ0|X|/k, 0).
  static Priors defaults(double area, std::size_t k, double lambda0 = 1.0e-4);
  static double label_probability(double lambda0, double area, std::size_t k);
  void validate() const;
};

struct ProposalSettings {
  double sigma1 = 0.07;
  double sigma2 = 0.05;
  double rho12 = -0.7;
  double p_theta = 0.05;
  double p_lambda = 0.2;
  std::size_t aux_chain_steps = 5000;

  void validate() const;
};

struct Theta {
  double lambda = 1.0e-4;
  double beta = 1.0;
  double gamma = 2.0 / 7.0;
};

using LabelVector = std::vector<std::uint8_t>;

/// Points with label 1.
std::vector<Point> necessary_points(std::span<const Point> zeta, std::span<const std::uint8_t> labels);
/// d_min of the label-1 subset exceeds h.
bool labels_feasible(std::span<const Point> zeta, std::span<const std::uint8_t> labels, double hard_core);

/// log of the prior ratio π(θ', W') / π(θ, W); -∞ when W' is infeasible or
/// θ' leaves the prior support.
double log_prior_ratio(const Theta& to, std::span<const std::uint8_t> to_labels, const Theta& from,
                       std::span<const std::uint8_t> from_labels, const Priors& priors, std::span<const Point> zeta,
                       double hard_core);

/// Exact draw λ | (ζ, W) ~ Gamma(a0 + n0, b0 + |X|).
double gibbs_update_lambda(std::size_t random_count, double area, const Priors& priors, Rng& rng);

struct BetaGammaProposal {
  double beta;
  double gamma;
  /// log q(θ | θ') / q(θ' | θ) = log(β'γ' / (βγ)).
  double log_proposal_ratio;
};

/// Correlated log-normal random walk on (β, γ).
BetaGammaProposal propose_beta_gamma(double beta, double gamma, const ProposalSettings& settings, Rng& rng);

/// Fixed quantities of one separation problem.
struct SeparationProblem {
  const PointPattern* zeta = nullptr;
  std::shared_ptr<const ScalarGrid> trend;  // μ
  const RegionOfInterest* roi = nullptr;
  InteractionRadii radii;
  Priors priors;
  /// μ at each observed point; NaN where the trend is excluded.
  std::vector<double> point_trend;

  /// `zeta` and `roi` must outlive the problem.
  SeparationProblem(const PointPattern& zeta, std::shared_ptr<const ScalarGrid> trend, const RegionOfInterest& roi,
                    InteractionRadii radii, Priors priors);

  ModelParams strauss_params(double beta, double gamma) const;
};

/// Log Hastings ratio of the auxiliary-variable (β, γ) move from
/// (θ, χ) to (θ', χ'), with φ the Strauss density at `aux_params`. All
/// normalizing constants cancel; the result includes the proposal ratio.
double log_hastings_beta_gamma(const Theta& from, const Theta& to, std::span<const Point> eta,
                               std::span<const Point> aux_from, std::span<const Point> aux_to,
                               const Theta& aux_params, const SeparationProblem& problem);

/// Log Hastings ratio for flipping label i (φ factor equal to one).
double log_hastings_flip(std::size_t i, const Theta& theta, std::span<const std::uint8_t> labels,
                         const SeparationProblem& problem);

struct MoveStats {
  std::size_t proposed = 0;
  std::size_t accepted = 0;
  double rate() const { return proposed == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposed); }
};

struct ChainState {
  Theta theta;
  LabelVector labels;
  /// θ̂ = (·, β̂, γ̂) parameterizing the auxiliary density φ.
  Theta aux_params;
  std::vector<Point> aux_pattern;
  std::size_t iteration = 0;
  MoveStats lambda_moves;
  MoveStats beta_gamma_moves;
  MoveStats flip_moves;
};

/// λ Gibbs step; always accepted.
void update_lambda(ChainState& state, const SeparationProblem& problem, Rng& rng);

/// Auxiliary-variable Metropolis-Hastings step on (β, γ). The new auxiliary
/// pattern is drawn by the birth-death-move sampler at (β', γ'). Returns
/// whether the proposal was accepted; on reject the old χ is kept.
bool update_beta_gamma_aux(ChainState& state, const SeparationProblem& problem, const ProposalSettings& settings,
                           Rng& rng);

/// Uniformly chosen single-label flip. Points with excluded trend never move to 1.
bool update_label_flip(ChainState& state, const SeparationProblem& problem, Rng& rng);

/// All-ones labels repaired greedily: a point is set to 0 when it lies within
/// h of an earlier label-1 point or has excluded trend.
LabelVector initial_labels(const SeparationProblem& problem);

}  // namespace miseal
