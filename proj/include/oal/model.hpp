#pragma once

#include <cstdint>

#include "oal/expert.hpp"
#include "oal/mdp.hpp"
#include "oal/tensor.hpp"

namespace oal {

// Visit and transition counters. n counts (h, s, a) visits for every step;
// m counts observed successors and therefore only exists for h < H-1 (the
// final step has no observed next state). For h < H-1 the invariant
// sum_{s'} m[h][s][a][s'] == n[h][s][a] holds after every record.
struct VisitCounters {
  int horizon = 0;
  int num_states = 0;
  int num_actions = 0;
  Count3 n;  // [H][S][A]
  Count4 m;  // [H-1][S][A][S']
  std::int64_t episodes_recorded = 0;

  VisitCounters() = default;
  VisitCounters(int H, int S, int A)
      : horizon(H), num_states(S), num_actions(A), n(H, S, A), m(H > 1 ? H - 1 : 0, S, A, S) {}
};

// Maximum-likelihood dynamics: rows m/n where observed, uniform where not.
// The final step's rows are unused by any recursion but emitted as uniform.
struct EmpiricalDynamics {
  Tensor4 p_bar;  // [H][S][A][S']
};

// Optimism bonus per (h, s, a), decreasing in the visit count.
struct BonusTable {
  Tensor3 b;  // [H][S][A]
};

void record_trajectory(VisitCounters& counters, const Trajectory& traj);

EmpiricalDynamics estimate_dynamics(const VisitCounters& counters);

// b[h][s][a] = scale * sqrt(4 H^2 S log(3 H^2 S A episodes / delta_prime)
//                           / max(n[h][s][a], 1)).
// episodes is the planned episode budget K; scale 0 disables exploration.
BonusTable ucb_bonus(const VisitCounters& counters, int episodes, double delta_prime,
                     double scale);

// Records every expert trajectory into the counters before learning starts.
void warm_start_from_expert(VisitCounters& counters, const TrajectorySet& data);

namespace detail {

// Allocation-free variants for the per-episode loop.
void estimate_dynamics_raw(const VisitCounters& counters, Tensor4& p_bar);
// coeff = scale * sqrt(4 H^2 S log(3 H^2 S A K / delta_prime)); b = coeff / sqrt(max(n,1)).
double bonus_coefficient(int horizon, int num_states, int num_actions, int episodes,
                         double delta_prime, double scale);
void ucb_bonus_raw(const VisitCounters& counters, double coeff, Tensor3& b);

}  // namespace detail

}  // namespace oal
