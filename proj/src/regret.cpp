#include "oal/regret.hpp"

#include <cstdint>
#include <stdexcept>

#include "oal/kernels.hpp"

namespace oal {

void accumulate(CumulativeGap& gap, const Tensor3& d_policy, const Tensor3& d_expert) {
  if (!gap.g.same_shape(d_policy) || !gap.g.same_shape(d_expert)) {
    throw std::invalid_argument("accumulate: shape mismatch");
  }
  kernels::ops().acc_diff(gap.g.v.data(), d_policy.v.data(), d_expert.v.data(), gap.g.size());
  gap.episodes += 1;
}

double al_regret(const Tensor3& gap) {
  return kernels::ops().pos_sum(gap.v.data(), gap.size());
}

double al_regret_bruteforce(const Tensor3& gap) {
  const std::size_t n = gap.size();
  if (n > 20) {
    throw std::invalid_argument("al_regret_bruteforce: refuses H*S*A > 20 (2^n vertices)");
  }
  double best = 0.0;  // the all-zero cost is a vertex
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ull << i)) v += gap.v[i];
    }
    if (v > best) best = v;
  }
  return best;
}

double expert_value_gap(const TabularMdp& mdp, const StochasticPolicy& pi,
                        const StochasticPolicy& expert, const CostFunction& cost) {
  const double v_pi = initial_value(mdp, evaluate(mdp, cost, pi));
  const double v_expert = initial_value(mdp, evaluate(mdp, cost, expert));
  return v_pi - v_expert;
}

RegretCurve build_curve(RunLog& log, const OccupancyMeasure& expert_exact) {
  RegretCurve curve;
  curve.episodes.reserve(log.checkpoints.size());
  curve.regret.reserve(log.checkpoints.size());

  CumulativeGap gap(expert_exact.d.H, expert_exact.d.S, expert_exact.d.A);
  std::size_t next_checkpoint = 0;

  auto emit = [&](int episode) {
    const double r = al_regret(gap);
    curve.episodes.push_back(episode);
    curve.regret.push_back(r);
    log.checkpoints[next_checkpoint].regret = r;
    ++next_checkpoint;
  };

  if (!log.checkpoints.empty() && log.checkpoints[0].episode == 0) emit(0);
  for (std::size_t j = 0; j < log.episode_occupancies.size(); ++j) {
    accumulate(gap, log.episode_occupancies[j], expert_exact.d);
    const int episode = static_cast<int>(j) + 1;
    if (next_checkpoint < log.checkpoints.size() &&
        log.checkpoints[next_checkpoint].episode == episode) {
      emit(episode);
    }
  }
  if (next_checkpoint != log.checkpoints.size()) {
    throw std::invalid_argument("build_curve: checkpoints do not match logged episodes");
  }
  return curve;
}

}  // namespace oal
