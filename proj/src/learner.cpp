#include "oal/learner.hpp"

#include <cmath>
#include <stdexcept>

#include "oal/kernels.hpp"

namespace oal {

ResolvedOalConfig resolve(const OalConfig& config, const TabularMdp& mdp) {
  if (config.episodes < 0) throw std::invalid_argument("resolve: negative episode budget");
  if (config.eval_every < 1) throw std::invalid_argument("resolve: eval_every must be >= 1");
  if (config.delta <= 0.0 || config.delta >= 1.0) {
    throw std::invalid_argument("resolve: delta must lie in (0,1)");
  }
  if (config.bonus_scale < 0.0) throw std::invalid_argument("resolve: negative bonus_scale");
  if (config.initial_cost < 0.0 || config.initial_cost > 1.0) {
    throw std::invalid_argument("resolve: initial_cost outside [0,1]");
  }
  const double H = mdp.horizon, S = mdp.num_states, A = mdp.num_actions;
  const double K = config.episodes > 0 ? config.episodes : 1;
  ResolvedOalConfig r;
  r.episodes = config.episodes;
  r.policy_step = config.policy_step.value_or(std::sqrt(2.0 * std::log(A) / (H * H * K)));
  r.cost_step = config.cost_step.value_or(std::sqrt(S * A / (2.0 * K)));
  r.delta = config.delta;
  r.delta_prime = config.delta / 3.0;
  r.bonus_scale = config.bonus_scale;
  r.bonus_coeff = detail::bonus_coefficient(mdp.horizon, mdp.num_states, mdp.num_actions,
                                            static_cast<int>(K), r.delta_prime,
                                            config.bonus_scale);
  r.initial_cost = config.initial_cost;
  r.bc_init = config.bc_init;
  r.expert_model_init = config.expert_model_init;
  r.eval_every = config.eval_every;
  return r;
}

namespace detail {

void optimistic_evaluate_raw(const Tensor4& p_bar, const Tensor3& c, const Tensor3& b,
                             const Tensor3& pi, Tensor3& q, std::vector<double>& v) {
  const auto& k = kernels::ops();
  const int H = pi.H, S = pi.S, A = pi.A;
  for (int s = 0; s < S; ++s) v[static_cast<std::size_t>(H) * S + s] = 0.0;
  for (int h = H - 1; h >= 0; --h) {
    const double* vnext = v.data() + static_cast<std::size_t>(h + 1) * S;
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        const double raw = c(h, s, a) - b(h, s, a) +
                           k.dot(p_bar.row(h, s, a).data(), vnext, static_cast<std::size_t>(S));
        q(h, s, a) = raw > 0.0 ? raw : 0.0;
      }
      v[static_cast<std::size_t>(h) * S + s] =
          k.dot(q.row(h, s).data(), pi.row(h, s).data(), static_cast<std::size_t>(A));
    }
  }
}

void policy_update_raw(Tensor3& pi, const Tensor3& q, double policy_step) {
  const int H = pi.H, S = pi.S, A = pi.A;
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      auto row = pi.row(h, s);
      const auto qrow = q.row(h, s);
      double lo = policy_step * qrow[0];
      for (int a = 1; a < A; ++a) lo = std::min(lo, policy_step * qrow[a]);
      double z = 0.0;
      for (int a = 0; a < A; ++a) {
        row[a] *= std::exp(-(policy_step * qrow[a] - lo));
        z += row[a];
      }
      if (!(z > 0.0) || !std::isfinite(z)) {
        throw std::runtime_error("policy_update: degenerate normalizer");
      }
      for (int a = 0; a < A; ++a) row[a] /= z;
    }
  }
}

}  // namespace detail

ValueTables optimistic_evaluate(const EmpiricalDynamics& dynamics, const CostFunction& cost,
                                const BonusTable& bonus, const StochasticPolicy& pi) {
  ValueTables t;
  t.H = pi.probs.H;
  t.S = pi.probs.S;
  t.q = Tensor3(t.H, t.S, pi.probs.A);
  t.v.assign(static_cast<std::size_t>(t.H + 1) * t.S, 0.0);
  detail::optimistic_evaluate_raw(dynamics.p_bar, cost.c, bonus.b, pi.probs, t.q, t.v);
  return t;
}

StochasticPolicy policy_update(const StochasticPolicy& pi, const ValueTables& tables,
                               double policy_step) {
  StochasticPolicy out = pi;
  detail::policy_update_raw(out.probs, tables.q, policy_step);
  return out;
}

CostFunction cost_update(const CostFunction& cost, const OccupancyMeasure& d_hat_k,
                         const EmpiricalOccupancy& d_hat_expert, double cost_step) {
  CostFunction out = cost;
  kernels::ops().clip_step(cost.c.v.data(), d_hat_k.d.v.data(), d_hat_expert.d_hat.v.data(),
                           cost_step, out.c.v.data(), cost.c.size());
  return out;
}

OccupancyMeasure model_occupancy(const EmpiricalDynamics& dynamics,
                                 std::span<const double> initial_dist,
                                 const StochasticPolicy& pi) {
  OccupancyMeasure occ;
  occ.d = Tensor3(pi.probs.H, pi.probs.S, pi.probs.A);
  std::vector<double> scratch(pi.probs.S);
  detail::occupancy_raw(dynamics.p_bar, initial_dist.data(), pi.probs, occ.d, scratch.data());
  return occ;
}

void run_episode(OalState& state, const TabularMdp& mdp,
                 const EmpiricalOccupancy& expert_occupancy, const ResolvedOalConfig& config,
                 std::mt19937_64& rng, OalWorkspace& ws) {
  const auto& k = kernels::ops();

  // (1) Rollout under the current policy.
  const Trajectory traj = sample_trajectory(mdp, state.policy, rng);

  // (2) Empirical model and bonus from pre-episode counters.
  detail::estimate_dynamics_raw(state.counters, ws.p_bar);
  detail::ucb_bonus_raw(state.counters, config.bonus_coeff, ws.bonus);

  // (3) Estimated occupancy of the current policy under the empirical model.
  detail::occupancy_raw(ws.p_bar, mdp.initial_dist.data(), state.policy.probs, ws.d_hat,
                        ws.scratch.data());

  // (4) Optimistic evaluation of the current policy and cost.
  detail::optimistic_evaluate_raw(ws.p_bar, state.cost.c, ws.bonus, state.policy.probs, ws.q,
                                  ws.v);

  // (5) Policy mirror-descent step.
  detail::policy_update_raw(state.policy.probs, ws.q, config.policy_step);

  // (6) Cost ascent step (in place; clip_step reads c[i] before writing).
  k.clip_step(state.cost.c.v.data(), ws.d_hat.v.data(), expert_occupancy.d_hat.v.data(),
              config.cost_step, state.cost.c.v.data(), state.cost.c.size());

  // (7) Only now does this episode's data enter the counters.
  record_trajectory(state.counters, traj);

  state.episode += 1;
}

std::vector<int> checkpoint_schedule(int episodes, int eval_every) {
  std::vector<int> out{0};
  for (int k = 1; k <= episodes; ++k) {
    if (k % eval_every == 0 || k == episodes) out.push_back(k);
  }
  return out;
}

RunLog run(const TabularMdp& mdp, const TrajectorySet& expert_data, const OalConfig& config,
           std::mt19937_64& rng) {
  const int H = mdp.horizon, S = mdp.num_states, A = mdp.num_actions;
  RunLog log;
  log.config = resolve(config, mdp);

  const EmpiricalOccupancy expert_occ = empirical_occupancy(expert_data);

  OalState state;
  state.policy =
      log.config.bc_init ? bc_policy(expert_data) : StochasticPolicy::uniform(H, S, A);
  state.cost = CostFunction::constant(H, S, A, log.config.initial_cost);
  state.counters = VisitCounters(H, S, A);
  if (log.config.expert_model_init) warm_start_from_expert(state.counters, expert_data);

  OalWorkspace ws(H, S, A);
  std::vector<double> scratch(S);

  log.episode_occupancies.reserve(log.config.episodes);
  for (int e : checkpoint_schedule(log.config.episodes, log.config.eval_every)) {
    log.checkpoints.push_back({e, std::numeric_limits<double>::quiet_NaN()});
  }

  for (int k = 1; k <= log.config.episodes; ++k) {
    // True-model occupancy of the policy about to act; evaluation-only.
    Tensor3 d_true(H, S, A);
    detail::occupancy_raw(mdp.dynamics, mdp.initial_dist.data(), state.policy.probs, d_true,
                          scratch.data());
    log.episode_occupancies.push_back(std::move(d_true));

    run_episode(state, mdp, expert_occ, log.config, rng, ws);
  }

  log.final_policy = state.policy;
  log.final_cost = state.cost;
  return log;
}

}  // namespace oal
