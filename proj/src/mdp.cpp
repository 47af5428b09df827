#include "oal/mdp.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "oal/kernels.hpp"

namespace oal {

namespace detail {

void normalize_row(std::span<double> row, const std::string& where) {
  double sum = 0.0;
  for (double x : row) {
    if (!std::isfinite(x)) throw std::invalid_argument(where + ": non-finite entry");
    if (x < -1e-12) throw std::invalid_argument(where + ": negative entry " + std::to_string(x));
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument(where + ": row sums to " + std::to_string(sum) +
                                ", violates normalization beyond 1e-12");
  }
  for (double& x : row) {
    if (x < 0.0) x = 0.0;
    x /= sum;
  }
}

void occupancy_raw(const Tensor4& p, const double* mu, const Tensor3& pi, Tensor3& d,
                   double* scratch) {
  const auto& k = kernels::ops();
  const int H = pi.H, S = pi.S, A = pi.A;
  for (int s = 0; s < S; ++s) {
    k.scale(mu[s], pi.row(0, s).data(), d.row(0, s).data(), static_cast<std::size_t>(A));
  }
  for (int h = 0; h + 1 < H; ++h) {
    for (int s = 0; s < S; ++s) scratch[s] = 0.0;
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        const double mass = d(h, s, a);
        if (mass != 0.0) {
          k.axpy(mass, p.row(h, s, a).data(), scratch, static_cast<std::size_t>(S));
        }
      }
    }
    for (int s2 = 0; s2 < S; ++s2) {
      k.scale(scratch[s2], pi.row(h + 1, s2).data(), d.row(h + 1, s2).data(),
              static_cast<std::size_t>(A));
    }
  }
}

void evaluate_raw(const Tensor4& p, const Tensor3& c, const Tensor3& pi, Tensor3& q,
                  std::vector<double>& v) {
  const auto& k = kernels::ops();
  const int H = pi.H, S = pi.S, A = pi.A;
  for (int s = 0; s < S; ++s) v[static_cast<std::size_t>(H) * S + s] = 0.0;
  for (int h = H - 1; h >= 0; --h) {
    const double* vnext = v.data() + static_cast<std::size_t>(h + 1) * S;
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        q(h, s, a) = c(h, s, a) + k.dot(p.row(h, s, a).data(), vnext, static_cast<std::size_t>(S));
      }
      v[static_cast<std::size_t>(h) * S + s] =
          k.dot(q.row(h, s).data(), pi.row(h, s).data(), static_cast<std::size_t>(A));
    }
  }
}

}  // namespace detail

namespace {

std::string cell_name(const char* what, int h, int s, int a = -1) {
  char buf[96];
  if (a < 0) {
    std::snprintf(buf, sizeof buf, "%s[h=%d][s=%d]", what, h, s);
  } else {
    std::snprintf(buf, sizeof buf, "%s[h=%d][s=%d][a=%d]", what, h, s, a);
  }
  return buf;
}

}  // namespace

int sample_categorical(std::span<const double> probs, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = static_cast<int>(i);
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  if (last_positive < 0) throw std::invalid_argument("sample_categorical: zero row");
  return last_positive;
}

TabularMdp::TabularMdp(int horizon_, int num_states_, int num_actions_,
                       std::vector<double> initial_dist_, Tensor4 dynamics_)
    : horizon(horizon_),
      num_states(num_states_),
      num_actions(num_actions_),
      initial_dist(std::move(initial_dist_)),
      dynamics(std::move(dynamics_)) {
  if (horizon < 1 || num_states < 1 || num_actions < 1) {
    throw std::invalid_argument("TabularMdp: dimensions must be positive");
  }
  if (initial_dist.size() != static_cast<std::size_t>(num_states)) {
    throw std::invalid_argument("TabularMdp: initial_dist size mismatch");
  }
  if (dynamics.H != horizon || dynamics.S != num_states || dynamics.A != num_actions ||
      dynamics.S2 != num_states) {
    throw std::invalid_argument("TabularMdp: dynamics shape mismatch");
  }
  detail::normalize_row(std::span<double>(initial_dist.data(), initial_dist.size()),
                        "initial_dist");
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < num_states; ++s) {
      for (int a = 0; a < num_actions; ++a) {
        detail::normalize_row(dynamics.row(h, s, a), cell_name("dynamics", h, s, a));
      }
    }
  }
}

StochasticPolicy StochasticPolicy::uniform(int H, int S, int A) {
  StochasticPolicy pi;
  pi.probs = Tensor3(H, S, A, 1.0 / A);
  return pi;
}

StochasticPolicy StochasticPolicy::validated(Tensor3 probs) {
  for (int h = 0; h < probs.H; ++h) {
    for (int s = 0; s < probs.S; ++s) {
      detail::normalize_row(probs.row(h, s), cell_name("policy", h, s));
    }
  }
  StochasticPolicy pi;
  pi.probs = std::move(probs);
  return pi;
}

CostFunction CostFunction::constant(int H, int S, int A, double value) {
  if (value < 0.0 || value > 1.0) {
    throw std::invalid_argument("CostFunction::constant: value outside [0,1]");
  }
  CostFunction cost;
  cost.c = Tensor3(H, S, A, value);
  return cost;
}

CostFunction CostFunction::validated(Tensor3 values) {
  for (int h = 0; h < values.H; ++h) {
    for (int s = 0; s < values.S; ++s) {
      for (int a = 0; a < values.A; ++a) {
        double& x = values(h, s, a);
        if (!std::isfinite(x) || x < -1e-12 || x > 1.0 + 1e-12) {
          throw std::invalid_argument(cell_name("cost", h, s, a) + " = " + std::to_string(x) +
                                      " outside [0,1]");
        }
        if (x < 0.0) x = 0.0;
        if (x > 1.0) x = 1.0;
      }
    }
  }
  CostFunction cost;
  cost.c = std::move(values);
  return cost;
}

OccupancyMeasure occupancy(const Tensor4& dynamics, std::span<const double> initial_dist,
                           const StochasticPolicy& pi) {
  OccupancyMeasure occ;
  occ.d = Tensor3(pi.probs.H, pi.probs.S, pi.probs.A);
  std::vector<double> scratch(pi.probs.S);
  detail::occupancy_raw(dynamics, initial_dist.data(), pi.probs, occ.d, scratch.data());
  return occ;
}

OccupancyMeasure occupancy(const TabularMdp& mdp, const StochasticPolicy& pi) {
  return occupancy(mdp.dynamics,
                   std::span<const double>(mdp.initial_dist.data(), mdp.initial_dist.size()), pi);
}

ValueTables evaluate(const Tensor4& dynamics, const CostFunction& cost,
                     const StochasticPolicy& pi) {
  ValueTables t;
  t.H = pi.probs.H;
  t.S = pi.probs.S;
  t.q = Tensor3(t.H, t.S, pi.probs.A);
  t.v.assign(static_cast<std::size_t>(t.H + 1) * t.S, 0.0);
  detail::evaluate_raw(dynamics, cost.c, pi.probs, t.q, t.v);
  return t;
}

ValueTables evaluate(const TabularMdp& mdp, const CostFunction& cost,
                     const StochasticPolicy& pi) {
  return evaluate(mdp.dynamics, cost, pi);
}

double inner_product(const CostFunction& cost, const OccupancyMeasure& occ) {
  return kernels::ops().dot(cost.c.v.data(), occ.d.v.data(), cost.c.size());
}

double initial_value(const TabularMdp& mdp, const ValueTables& tables) {
  return kernels::ops().dot(mdp.initial_dist.data(), tables.v.data(),
                            static_cast<std::size_t>(tables.S));
}

Trajectory sample_trajectory(const TabularMdp& mdp, const StochasticPolicy& pi,
                             std::mt19937_64& rng) {
  Trajectory traj;
  traj.states.resize(mdp.horizon);
  traj.actions.resize(mdp.horizon);
  int s = sample_categorical(
      std::span<const double>(mdp.initial_dist.data(), mdp.initial_dist.size()), rng);
  for (int h = 0; h < mdp.horizon; ++h) {
    const int a = sample_categorical(pi.probs.row(h, s), rng);
    traj.states[h] = s;
    traj.actions[h] = a;
    if (h + 1 < mdp.horizon) s = sample_categorical(mdp.dynamics.row(h, s, a), rng);
  }
  return traj;
}

double value_difference_residual(const TabularMdp& mdp1, const CostFunction& cost1,
                                 const TabularMdp& mdp2, const CostFunction& cost2,
                                 const StochasticPolicy& pi1, const StochasticPolicy& pi2) {
  const int H = mdp1.horizon, S = mdp1.num_states, A = mdp1.num_actions;
  if (mdp2.horizon != H || mdp2.num_states != S || mdp2.num_actions != A) {
    throw std::invalid_argument("value_difference_residual: shape mismatch");
  }
  const ValueTables t1 = evaluate(mdp1, cost1, pi1);
  const ValueTables t2 = evaluate(mdp2, cost2, pi2);

  double worst = 0.0;
  std::vector<double> w(S), wnext(S);
  for (int s0 = 0; s0 < S; ++s0) {
    // w_h(s) = P(s_h = s | s_0, pi2, mdp2).
    std::fill(w.begin(), w.end(), 0.0);
    w[s0] = 1.0;
    double rhs = 0.0;
    for (int h = 0; h < H; ++h) {
      for (int s = 0; s < S; ++s) {
        if (w[s] == 0.0) continue;
        double pi_term = 0.0;
        double mc_term = 0.0;
        for (int a = 0; a < A; ++a) {
          const double q1 = t1.q(h, s, a);
          pi_term += q1 * (pi1.probs(h, s, a) - pi2.probs(h, s, a));
          double shift = cost1.c(h, s, a) - cost2.c(h, s, a);
          const double* v1next = t1.v.data() + static_cast<std::size_t>(h + 1) * S;
          for (int s2 = 0; s2 < S; ++s2) {
            shift += (mdp1.dynamics(h, s, a, s2) - mdp2.dynamics(h, s, a, s2)) * v1next[s2];
          }
          mc_term += pi2.probs(h, s, a) * shift;
        }
        rhs += w[s] * (pi_term + mc_term);
      }
      if (h + 1 < H) {
        std::fill(wnext.begin(), wnext.end(), 0.0);
        for (int s = 0; s < S; ++s) {
          if (w[s] == 0.0) continue;
          for (int a = 0; a < A; ++a) {
            const double mass = w[s] * pi2.probs(h, s, a);
            if (mass != 0.0) {
              kernels::ops().axpy(mass, mdp2.dynamics.row(h, s, a).data(), wnext.data(),
                                  static_cast<std::size_t>(S));
            }
          }
        }
        std::swap(w, wnext);
      }
    }
    const double lhs = t1.value(0, s0) - t2.value(0, s0);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace oal
