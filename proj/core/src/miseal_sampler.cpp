#include "miseal/miseal_sampler.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "miseal/errors.hpp"
#include "miseal/strauss_sampler.hpp"

namespace miseal {

void Schedule::validate() const {
  if (thinning == 0) throw DataError("thinning must be at least 1");
  if (refit_interval == 0) throw DataError("refit interval must be at least 1");
  if (burn_in > iterations) throw DataError("burn-in exceeds the iteration count");
}

namespace {

Theta fit_aux(const SeparationProblem& problem, const LabelVector& labels, const MiSealConfig& config) {
  const auto eta = necessary_points(problem.zeta->points, labels);
  MpleOptions opt = config.mple;
  opt.fallback_beta = problem.priors.a1 / problem.priors.b1;
  opt.fallback_gamma = problem.priors.p1 / (problem.priors.p1 + problem.priors.q1);
  const auto r = mple_strauss(eta, problem.radii, *problem.trend, *problem.roi, opt);
  if (!r.converged) std::cerr << "warning: pseudo-likelihood fit stopped at the iteration cap\n";
  Theta out;
  out.beta = r.beta;
  out.gamma = r.gamma;
  return out;
}

// Auxiliary pattern typical for the current θ; a state reset used at start-up
// and whenever θ̂ changes during burn-in.
std::vector<Point> draw_aux(const SeparationProblem& problem, const Theta& theta, std::size_t steps, Rng& rng) {
  const auto params = problem.strauss_params(theta.beta, theta.gamma);
  std::vector<Point> state;
  StraussSampler sampler(params, *problem.roi);
  sampler.run(state, steps, rng);
  return state;
}

Theta average(const std::vector<Theta>& history, bool log_space) {
  Theta m{0.0, 0.0, 0.0};
  for (const auto& t : history) {
    m.beta += log_space ? std::log(t.beta) : t.beta;
    m.gamma += log_space ? std::log(t.gamma) : t.gamma;
  }
  const double k = static_cast<double>(history.size());
  m.beta /= k;
  m.gamma /= k;
  if (log_space) {
    m.beta = std::exp(m.beta);
    m.gamma = std::exp(m.gamma);
  }
  return m;
}

}  // namespace

PosteriorTrace run_miseal(const PointPattern& zeta, std::shared_ptr<const ScalarGrid> trend,
                          const RegionOfInterest& roi, const MiSealConfig& config, std::uint64_t seed) {
  config.schedule.validate();
  config.proposal.validate();
  Priors priors = config.priors;
  if (config.derive_label_prior) priors.p_w = Priors::label_probability(priors.lambda0, zeta.area, zeta.size());
  const SeparationProblem problem(zeta, std::move(trend), roi, config.radii, priors);
  const auto& sched = config.schedule;
  std::size_t forced = 0;
  for (double m : problem.point_trend) forced += is_excluded(m) || m == 0.0;
  if (forced > 0)
    std::cerr << "warning: " << forced << " point(s) lie where the trend is excluded or zero; labelled random\n";

  Rng rng(seed);
  ChainState state;
  state.theta = config.initial_theta.value_or(Theta{priors.a0 / priors.b0, priors.a1 / priors.b1,
                                                    priors.p1 / (priors.p1 + priors.q1)});
  state.labels = initial_labels(problem);
  state.aux_params = fit_aux(problem, state.labels, config);
  state.aux_pattern = draw_aux(problem, state.theta, config.proposal.aux_chain_steps, rng);

  PosteriorTrace trace;
  trace.priors = priors;
  trace.thinning = sched.thinning;
  trace.label_samples.point_count = zeta.size();
  std::vector<std::size_t> ones(zeta.size(), 0);
  const std::size_t kept = sched.iterations - sched.burn_in;
  trace.records.reserve(kept / sched.thinning + 1);
#ifdef NDEBUG
  constexpr std::size_t kFeasibilityEvery = 1000;
#else
  constexpr std::size_t kFeasibilityEvery = 1;
#endif

  for (std::size_t t = 0; t < sched.iterations; ++t) {
    if (t > 0 && t <= sched.burn_in && t % sched.refit_interval == 0) {
      trace.mple_history.push_back(fit_aux(problem, state.labels, config));
      state.aux_params = trace.mple_history.back();
      if (t == sched.burn_in) state.aux_params = average(trace.mple_history, config.aux_mean_log_space);
      state.aux_pattern = draw_aux(problem, state.theta, config.proposal.aux_chain_steps, rng);
    } else if (t == sched.burn_in && t > 0 && !trace.mple_history.empty()) {
      state.aux_params = average(trace.mple_history, config.aux_mean_log_space);
      state.aux_pattern = draw_aux(problem, state.theta, config.proposal.aux_chain_steps, rng);
    }

    MoveType move;
    bool accepted;
    if (rng.uniform() < config.proposal.p_theta) {
      if (rng.uniform() < config.proposal.p_lambda) {
        update_lambda(state, problem, rng);
        move = MoveType::lambda;
        accepted = true;
      } else {
        accepted = update_beta_gamma_aux(state, problem, config.proposal, rng);
        move = MoveType::beta_gamma;
      }
    } else {
      accepted = update_label_flip(state, problem, rng);
      move = MoveType::flip;
    }

    if (t % kFeasibilityEvery == 0 && !labels_feasible(zeta.points, state.labels, config.radii.hard_core))
      throw std::logic_error("label state violates the hard core");

    if (t >= sched.burn_in) {
      for (std::size_t i = 0; i < ones.size(); ++i) ones[i] += state.labels[i];
      if ((t - sched.burn_in) % sched.thinning == 0) {
        trace.records.push_back({t, state.theta.lambda, state.theta.beta, state.theta.gamma, move, accepted});
        trace.label_samples.push(state.labels);
      }
    }
  }

  trace.label_frequency.assign(zeta.size(), 0.0);
  if (kept > 0)
    for (std::size_t i = 0; i < ones.size(); ++i)
      trace.label_frequency[i] = static_cast<double>(ones[i]) / static_cast<double>(kept);
  trace.aux_params = state.aux_params;
  trace.lambda_moves = state.lambda_moves;
  trace.beta_gamma_moves = state.beta_gamma_moves;
  trace.flip_moves = state.flip_moves;
  return trace;
}

}  // namespace miseal
