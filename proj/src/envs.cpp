#include "oal/envs.hpp"

#include <stdexcept>

namespace oal {

namespace {

StochasticPolicy always_action(int H, int S, int A, int action) {
  Tensor3 probs(H, S, A, 0.0);
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) probs(h, s, action) = 1.0;
  }
  StochasticPolicy pi;
  pi.probs = std::move(probs);
  return pi;
}

}  // namespace

EnvBundle stochastic_chain(int horizon, double alpha) {
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("stochastic_chain: alpha outside [0,1]");
  }
  const int S = 2, A = 2;
  Tensor4 p(horizon, S, A, S, 0.0);
  for (int h = 0; h < horizon; ++h) {
    p(h, 0, 0, 0) = 1.0 - alpha;
    p(h, 0, 0, 1) = alpha;
    p(h, 0, 1, 1) = 1.0;  // leaving is irreversible
    p(h, 1, 0, 1) = 1.0;
    p(h, 1, 1, 1) = 1.0;
  }
  return EnvBundle{TabularMdp(horizon, S, A, {1.0, 0.0}, std::move(p)),
                   always_action(horizon, S, A, 0)};
}

EnvBundle fifty_start_mdp() {
  const int H = 2, S = 50, A = 2;
  Tensor4 p(H, S, A, S, 0.0);
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      p(h, s, 0, 0) = 1.0;  // funnel
      p(h, s, 1, s) = 1.0;  // stay
    }
  }
  std::vector<double> mu(S, 1.0 / S);
  return EnvBundle{TabularMdp(H, S, A, std::move(mu), std::move(p)),
                   always_action(H, S, A, 0)};
}

}  // namespace oal
