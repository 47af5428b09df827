#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oal/mdp.hpp"
#include "oal/tensor.hpp"

namespace oal {

// Demonstrations rolled out under one policy on one MDP.
struct TrajectorySet {
  int horizon = 0;
  int num_states = 0;
  int num_actions = 0;
  std::vector<Trajectory> trajectories;

  std::int64_t size() const { return static_cast<std::int64_t>(trajectories.size()); }
};

// Empirical state-action visitation. The integer counts are authoritative:
// each trajectory contributes exactly one (s, a) per step, so counts at any
// step sum to exactly num_trajectories; d_hat = counts / num_trajectories.
struct EmpiricalOccupancy {
  Count3 counts;
  std::int64_t num_trajectories = 0;
  Tensor3 d_hat;
};

TrajectorySet collect_expert_data(const TabularMdp& mdp, const StochasticPolicy& expert,
                                  int num_trajectories, std::mt19937_64& rng);

// Throws std::invalid_argument on an empty set.
EmpiricalOccupancy empirical_occupancy(const TrajectorySet& data);

// Behavioral cloning: conditional action frequencies at every observed (h, s),
// uniform over actions at unobserved (h, s).
StochasticPolicy bc_policy(const TrajectorySet& data);

}  // namespace oal
