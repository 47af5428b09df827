#include "oal/model.hpp"

#include <cmath>
#include <stdexcept>

namespace oal {

void record_trajectory(VisitCounters& counters, const Trajectory& traj) {
  const int H = counters.horizon;
  if (static_cast<int>(traj.states.size()) != H ||
      static_cast<int>(traj.actions.size()) != H) {
    throw std::invalid_argument("record_trajectory: trajectory length != horizon");
  }
  for (int h = 0; h < H; ++h) {
    counters.n(h, traj.states[h], traj.actions[h]) += 1;
    if (h + 1 < H) counters.m(h, traj.states[h], traj.actions[h], traj.states[h + 1]) += 1;
  }
  counters.episodes_recorded += 1;
}

namespace detail {

void estimate_dynamics_raw(const VisitCounters& counters, Tensor4& p_bar) {
  const int H = counters.horizon, S = counters.num_states, A = counters.num_actions;
  const double unif = 1.0 / S;
  for (int h = 0; h < H; ++h) {
    const bool has_transitions = h + 1 < H;
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        auto row = p_bar.row(h, s, a);
        const std::int64_t visits = has_transitions ? counters.n(h, s, a) : 0;
        if (visits > 0) {
          const double inv = 1.0 / static_cast<double>(visits);
          for (int s2 = 0; s2 < S; ++s2) {
            row[s2] = static_cast<double>(counters.m(h, s, a, s2)) * inv;
          }
        } else {
          for (int s2 = 0; s2 < S; ++s2) row[s2] = unif;
        }
      }
    }
  }
}

double bonus_coefficient(int horizon, int num_states, int num_actions, int episodes,
                         double delta_prime, double scale) {
  if (scale == 0.0) return 0.0;
  if (episodes < 1 || delta_prime <= 0.0 || delta_prime >= 1.0) {
    throw std::invalid_argument("bonus_coefficient: need episodes >= 1, delta_prime in (0,1)");
  }
  const double H = horizon, S = num_states, A = num_actions, K = episodes;
  return scale * std::sqrt(4.0 * H * H * S * std::log(3.0 * H * H * S * A * K / delta_prime));
}

void ucb_bonus_raw(const VisitCounters& counters, double coeff, Tensor3& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::int64_t n = counters.n.v[i];
    b.v[i] = coeff / std::sqrt(static_cast<double>(n > 1 ? n : 1));
  }
}

}  // namespace detail

EmpiricalDynamics estimate_dynamics(const VisitCounters& counters) {
  EmpiricalDynamics dyn;
  dyn.p_bar = Tensor4(counters.horizon, counters.num_states, counters.num_actions,
                      counters.num_states);
  detail::estimate_dynamics_raw(counters, dyn.p_bar);
  return dyn;
}

BonusTable ucb_bonus(const VisitCounters& counters, int episodes, double delta_prime,
                     double scale) {
  BonusTable bonus;
  bonus.b = Tensor3(counters.horizon, counters.num_states, counters.num_actions);
  const double coeff = detail::bonus_coefficient(counters.horizon, counters.num_states,
                                                 counters.num_actions, episodes, delta_prime,
                                                 scale);
  detail::ucb_bonus_raw(counters, coeff, bonus.b);
  return bonus;
}

void warm_start_from_expert(VisitCounters& counters, const TrajectorySet& data) {
  for (const Trajectory& t : data.trajectories) record_trajectory(counters, t);
}

}  // namespace oal
