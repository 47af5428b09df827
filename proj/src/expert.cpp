#include "oal/expert.hpp"

#include <stdexcept>

namespace oal {

TrajectorySet collect_expert_data(const TabularMdp& mdp, const StochasticPolicy& expert,
                                  int num_trajectories, std::mt19937_64& rng) {
  if (num_trajectories < 0) {
    throw std::invalid_argument("collect_expert_data: negative trajectory count");
  }
  TrajectorySet data;
  data.horizon = mdp.horizon;
  data.num_states = mdp.num_states;
  data.num_actions = mdp.num_actions;
  data.trajectories.reserve(num_trajectories);
  for (int i = 0; i < num_trajectories; ++i) {
    data.trajectories.push_back(sample_trajectory(mdp, expert, rng));
  }
  return data;
}

EmpiricalOccupancy empirical_occupancy(const TrajectorySet& data) {
  if (data.trajectories.empty()) {
    throw std::invalid_argument("empirical_occupancy: empty trajectory set");
  }
  EmpiricalOccupancy occ;
  occ.counts = Count3(data.horizon, data.num_states, data.num_actions);
  occ.num_trajectories = data.size();
  for (const Trajectory& t : data.trajectories) {
    for (int h = 0; h < data.horizon; ++h) occ.counts(h, t.states[h], t.actions[h]) += 1;
  }
  occ.d_hat = Tensor3(data.horizon, data.num_states, data.num_actions);
  const double inv = 1.0 / static_cast<double>(occ.num_trajectories);
  for (std::size_t i = 0; i < occ.d_hat.size(); ++i) {
    occ.d_hat.v[i] = static_cast<double>(occ.counts.v[i]) * inv;
  }
  return occ;
}

StochasticPolicy bc_policy(const TrajectorySet& data) {
  const int H = data.horizon, S = data.num_states, A = data.num_actions;
  Count3 state_action(H, S, A);
  Count3 state_visits(H, S, 1);
  for (const Trajectory& t : data.trajectories) {
    for (int h = 0; h < H; ++h) {
      state_action(h, t.states[h], t.actions[h]) += 1;
      state_visits(h, t.states[h], 0) += 1;
    }
  }
  Tensor3 probs(H, S, A);
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      const std::int64_t visits = state_visits(h, s, 0);
      for (int a = 0; a < A; ++a) {
        probs(h, s, a) = visits > 0
                             ? static_cast<double>(state_action(h, s, a)) / visits
                             : 1.0 / A;
      }
    }
  }
  StochasticPolicy pi;
  pi.probs = std::move(probs);
  return pi;
}

}  // namespace oal
