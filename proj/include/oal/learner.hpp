#pragma once

#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "oal/expert.hpp"
#include "oal/mdp.hpp"
#include "oal/model.hpp"

namespace oal {

// Knobs for one apprenticeship run. Step sizes left unset resolve to the
// horizon- and budget-dependent defaults below.
struct OalConfig {
  int episodes = 10000;  // K
  // Policy player (entropy mirror descent): default sqrt(2 log A / (H^2 K)).
  std::optional<double> policy_step;
  // Cost player (projected gradient ascent): default sqrt(S A / (2 K)).
  std::optional<double> cost_step;
  double delta = 0.1;  // split three ways across the concentration events
  double bonus_scale = 1.0;  // 1 = theoretical bonus, 0 = no exploration
  double initial_cost = 0.5;
  bool bc_init = false;           // start from the behavioral-cloning policy
  bool expert_model_init = false; // warm-start counters with the expert data
  int eval_every = 10;            // checkpoint stride
};

struct ResolvedOalConfig {
  int episodes = 0;
  double policy_step = 0.0;
  double cost_step = 0.0;
  double delta = 0.0;
  double delta_prime = 0.0;
  double bonus_scale = 0.0;
  double bonus_coeff = 0.0;  // bonus = bonus_coeff / sqrt(max(n, 1))
  double initial_cost = 0.0;
  bool bc_init = false;
  bool expert_model_init = false;
  int eval_every = 0;
};

ResolvedOalConfig resolve(const OalConfig& config, const TabularMdp& mdp);

// Learner state after `episode` completed episodes. policy/cost are the
// iterates that will act in the next episode; counters hold everything
// recorded so far.
struct OalState {
  int episode = 0;
  StochasticPolicy policy;
  CostFunction cost;
  VisitCounters counters;
};

struct RunCheckpoint {
  int episode = 0;
  // Filled by the evaluation pass; NaN until then.
  double regret = std::numeric_limits<double>::quiet_NaN();
};

// Full record of one run. episode_occupancies[j] is the exact true-model
// occupancy of the policy that acted in episode j+1; it is what the regret
// definition sums over, so every episode is retained.
struct RunLog {
  ResolvedOalConfig config;
  std::vector<Tensor3> episode_occupancies;
  std::vector<RunCheckpoint> checkpoints;
  StochasticPolicy final_policy;
  CostFunction final_cost;
};

// Preallocated buffers for the per-episode loop.
struct OalWorkspace {
  Tensor4 p_bar;
  Tensor3 bonus;
  Tensor3 d_hat;
  Tensor3 q;
  std::vector<double> v;
  std::vector<double> scratch;

  OalWorkspace() = default;
  OalWorkspace(int H, int S, int A)
      : p_bar(H, S, A, S), bonus(H, S, A), d_hat(H, S, A), q(H, S, A),
        v(static_cast<std::size_t>(H + 1) * S), scratch(S) {}
};

// Optimistic policy evaluation under the empirical model:
// Q_h = max(c_h - b_h + p_bar_h V_{h+1}, 0), V_h = <Q_h(s,.), pi_h(.|s)>.
// Clipped below only; values may exceed H.
ValueTables optimistic_evaluate(const EmpiricalDynamics& dynamics, const CostFunction& cost,
                                const BonusTable& bonus, const StochasticPolicy& pi);

// Exponentiated update pi'(a|h,s) proportional to pi(a|h,s) exp(-t q(h,s,a)),
// stabilized per row by subtracting the smallest exponent. Zero-probability
// actions stay at zero.
StochasticPolicy policy_update(const StochasticPolicy& pi, const ValueTables& tables,
                               double policy_step);

// Projected ascent step c' = clip(c + t (d_hat_k - d_hat_E), 0, 1).
CostFunction cost_update(const CostFunction& cost, const OccupancyMeasure& d_hat_k,
                         const EmpiricalOccupancy& d_hat_expert, double cost_step);

// Forward recursion under the empirical model: identical to occupancy() but
// driven by p_bar.
OccupancyMeasure model_occupancy(const EmpiricalDynamics& dynamics,
                                 std::span<const double> initial_dist,
                                 const StochasticPolicy& pi);

// One episode of the min-max loop, in order: rollout under the current
// policy; model and bonus from pre-episode counters; estimated occupancy;
// optimistic evaluation; policy update; cost update; record the rollout.
void run_episode(OalState& state, const TabularMdp& mdp,
                 const EmpiricalOccupancy& expert_occupancy, const ResolvedOalConfig& config,
                 std::mt19937_64& rng, OalWorkspace& ws);

// Episodes at which runs are evaluated: 0, every eval_every, and the final
// episode.
std::vector<int> checkpoint_schedule(int episodes, int eval_every);

// K episodes from the configured initialization, logging the acting policy's
// true-model occupancy every episode and a checkpoint row every eval_every
// episodes (plus episode 0 and the final episode).
RunLog run(const TabularMdp& mdp, const TrajectorySet& expert_data, const OalConfig& config,
           std::mt19937_64& rng);

namespace detail {

void optimistic_evaluate_raw(const Tensor4& p_bar, const Tensor3& c, const Tensor3& b,
                             const Tensor3& pi, Tensor3& q, std::vector<double>& v);
void policy_update_raw(Tensor3& pi, const Tensor3& q, double policy_step);

}  // namespace detail

}  // namespace oal
