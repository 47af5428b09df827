#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

#include "oal/tensor.hpp"

namespace oal {

// Uniform double in [0, 1) from the top 53 bits; keeps sampling stable across
// standard-library implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw from a probability row. Falls back to the last positive
// entry when accumulated rounding leaves u past the total mass.
int sample_categorical(std::span<const double> probs, std::mt19937_64& rng);

// Finite-horizon MDP with time-indexed dynamics. Rows are validated against a
// 1e-12 normalization tolerance at construction and renormalized exactly.
struct TabularMdp {
  int horizon = 0;
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> initial_dist;  // [S]
  Tensor4 dynamics;                  // [H][S][A][S']

  TabularMdp() = default;
  TabularMdp(int horizon_, int num_states_, int num_actions_,
             std::vector<double> initial_dist_, Tensor4 dynamics_);
};

// Time-dependent policy; each (h, s) row is a distribution over actions.
struct StochasticPolicy {
  Tensor3 probs;  // [H][S][A]

  static StochasticPolicy uniform(int H, int S, int A);
  // Validates rows (tolerance 1e-12), renormalizes exactly. Throws
  // std::invalid_argument naming the offending row.
  static StochasticPolicy validated(Tensor3 probs);
};

// Time-dependent cost bounded to [0, 1] per entry.
struct CostFunction {
  Tensor3 c;  // [H][S][A]

  static CostFunction constant(int H, int S, int A, double value);
  // Throws std::invalid_argument naming the offending cell when an entry
  // falls outside [0,1] by more than 1e-12; in-range entries are clamped.
  static CostFunction validated(Tensor3 values);
};

// State-action visitation probabilities d[h][s][a]; each step slice sums to 1.
struct OccupancyMeasure {
  Tensor3 d;  // [H][S][A]
};

// One episode: states[h], actions[h] for h = 0..H-1.
struct Trajectory {
  std::vector<int> states;
  std::vector<int> actions;
};

// Backward-recursion output. v is [H+1][S] flat (v[H*S + s] = 0), q is [H][S][A].
struct ValueTables {
  int H = 0, S = 0;
  std::vector<double> v;
  Tensor3 q;

  double value(int h, int s) const { return v[static_cast<std::size_t>(h) * S + s]; }
};

// Forward recursion d[0][s][a] = mu(s) pi_0(a|s);
// d[h+1][s'][a'] = sum_{s,a} d[h][s][a] p_h(s'|s,a) pi_{h+1}(a'|s').
OccupancyMeasure occupancy(const TabularMdp& mdp, const StochasticPolicy& pi);
OccupancyMeasure occupancy(const Tensor4& dynamics, std::span<const double> initial_dist,
                           const StochasticPolicy& pi);

// Backward recursion V_H = 0; Q_h = c_h + p_h V_{h+1}; V_h = <Q_h(s,.), pi_h(.|s)>.
ValueTables evaluate(const TabularMdp& mdp, const CostFunction& cost, const StochasticPolicy& pi);
ValueTables evaluate(const Tensor4& dynamics, const CostFunction& cost, const StochasticPolicy& pi);

// sum_{h,s,a} c[h][s][a] d[h][s][a]; equals E_mu V_0 by duality.
double inner_product(const CostFunction& cost, const OccupancyMeasure& occ);

// Expected initial value sum_s mu(s) V_0(s).
double initial_value(const TabularMdp& mdp, const ValueTables& tables);

Trajectory sample_trajectory(const TabularMdp& mdp, const StochasticPolicy& pi,
                             std::mt19937_64& rng);

// Max-over-start-states absolute residual of the exact two-sided
// value-difference decomposition between (mdp1, cost1, pi1) and
// (mdp2, cost2, pi2). Zero up to rounding for any inputs of equal shape.
double value_difference_residual(const TabularMdp& mdp1, const CostFunction& cost1,
                                 const TabularMdp& mdp2, const CostFunction& cost2,
                                 const StochasticPolicy& pi1, const StochasticPolicy& pi2);

namespace detail {

// Allocation-free drivers used by the per-episode loop. scratch must hold S doubles.
void occupancy_raw(const Tensor4& p, const double* mu, const Tensor3& pi, Tensor3& d,
                   double* scratch);
void evaluate_raw(const Tensor4& p, const Tensor3& c, const Tensor3& pi, Tensor3& q,
                  std::vector<double>& v);

// Validates one probability row against tolerance 1e-12 and renormalizes it
// exactly; `where` names the row in diagnostics.
void normalize_row(std::span<double> row, const std::string& where);

}  // namespace detail

}  // namespace oal
