#pragma once

#include <vector>

#include "oal/learner.hpp"
#include "oal/mdp.hpp"

namespace oal {

// Running sum over episodes of (d^{pi_k} - d^E). Accumulated per episode so a
// policy whose occupancy equals the expert's bitwise contributes exactly zero.
struct CumulativeGap {
  Tensor3 g;
  int episodes = 0;

  CumulativeGap() = default;
  CumulativeGap(int H, int S, int A) : g(H, S, A, 0.0) {}
};

void accumulate(CumulativeGap& gap, const Tensor3& d_policy, const Tensor3& d_expert);

// Apprenticeship regret of a cumulative gap: the maximum of <c, g> over all
// costs with entries in [0, 1], which decouples per coordinate into
// sum_{h,s,a} max(g[h][s][a], 0).
double al_regret(const Tensor3& gap);
inline double al_regret(const CumulativeGap& gap) { return al_regret(gap.g); }

// Same maximum by enumerating all 2^{H*S*A} vertices of the cost box.
// Throws std::invalid_argument when H*S*A > 20.
double al_regret_bruteforce(const Tensor3& gap);

// sum_s mu(s) (V^pi_0(s) - V^expert_0(s)) under one fixed cost; a lower bound
// on the AL regret of a single episode's gap.
double expert_value_gap(const TabularMdp& mdp, const StochasticPolicy& pi,
                        const StochasticPolicy& expert, const CostFunction& cost);

struct RegretCurve {
  std::vector<int> episodes;
  std::vector<double> regret;
};

// Replays the logged per-episode occupancies, accumulating the gap against
// the exact expert occupancy every episode and evaluating the regret at each
// checkpoint. Fills the RunLog's checkpoint regrets in place.
RegretCurve build_curve(RunLog& log, const OccupancyMeasure& expert_exact);

}  // namespace oal
