#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oal/expert.hpp"
#include "oracles.hpp"

using namespace oal;

namespace {

// Two-state chain: action 0 at state 0 stays with prob 1-alpha, action 1
// jumps to the absorbing state 1.
TabularMdp tiny_chain(int H, double alpha) {
  Tensor4 p(H, 2, 2, 2, 0.0);
  for (int h = 0; h < H; ++h) {
    p(h, 0, 0, 0) = 1.0 - alpha;
    p(h, 0, 0, 1) = alpha;
    p(h, 0, 1, 1) = 1.0;
    p(h, 1, 0, 1) = 1.0;
    p(h, 1, 1, 1) = 1.0;
  }
  return TabularMdp(H, 2, 2, {1.0, 0.0}, std::move(p));
}

StochasticPolicy always_action(int H, int S, int A, int action) {
  Tensor3 probs(H, S, A, 0.0);
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) probs(h, s, action) = 1.0;
  }
  return StochasticPolicy::validated(std::move(probs));
}

}  // namespace

TEST_CASE("empirical occupancy: counts are conserved and scaled") {
  std::mt19937_64 rng(11);
  auto mdp = oracles::random_mdp(rng, 4, 3, 2);
  auto pi = oracles::random_policy(rng, 4, 3, 2);
  auto data = collect_expert_data(mdp, pi, 37, rng);
  auto occ = empirical_occupancy(data);
  CHECK(occ.num_trajectories == 37);
  for (int h = 0; h < 4; ++h) {
    std::int64_t total = 0;
    double mass = 0.0;
    for (int s = 0; s < 3; ++s) {
      for (int a = 0; a < 2; ++a) {
        total += occ.counts(h, s, a);
        mass += occ.d_hat(h, s, a);
        CHECK(occ.d_hat(h, s, a) ==
              doctest::Approx(occ.counts(h, s, a) / 37.0).epsilon(1e-15));
      }
    }
    CHECK(total == 37);  // one (s, a) per trajectory per step, exactly
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("single trajectory gives an indicator path") {
  std::mt19937_64 rng(12);
  auto mdp = tiny_chain(5, 0.3);
  auto expert = always_action(5, 2, 2, 0);
  auto data = collect_expert_data(mdp, expert, 1, rng);
  auto occ = empirical_occupancy(data);
  for (int h = 0; h < 5; ++h) {
    for (int s = 0; s < 2; ++s) {
      for (int a = 0; a < 2; ++a) {
        const bool on_path = data.trajectories[0].states[h] == s &&
                             data.trajectories[0].actions[h] == a;
        CHECK(occ.d_hat(h, s, a) == (on_path ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("deterministic MDP + deterministic expert: d_hat is exact for any N") {
  std::mt19937_64 rng(13);
  auto mdp = tiny_chain(6, 0.0);  // alpha = 0: fully deterministic
  auto expert = always_action(6, 2, 2, 0);
  auto exact = occupancy(mdp, expert);
  for (int n : {1, 3, 17}) {
    auto occ = empirical_occupancy(collect_expert_data(mdp, expert, n, rng));
    for (std::size_t i = 0; i < exact.d.size(); ++i) {
      CHECK(occ.d_hat.v[i] == exact.d.v[i]);
    }
  }
}

TEST_CASE("empirical occupancy converges to the exact one") {
  std::mt19937_64 rng(14);
  auto mdp = tiny_chain(8, 0.25);
  auto expert = always_action(8, 2, 2, 0);
  auto exact = occupancy(mdp, expert);
  auto occ = empirical_occupancy(collect_expert_data(mdp, expert, 20000, rng));
  for (std::size_t i = 0; i < exact.d.size(); ++i) {
    CHECK(std::abs(occ.d_hat.v[i] - exact.d.v[i]) <= 0.02);
  }
}

TEST_CASE("bc_policy: observed rows are frequencies, unobserved rows uniform") {
  TrajectorySet data;
  data.horizon = 2;
  data.num_states = 3;
  data.num_actions = 2;
  // Three trajectories through state 0 at h=0: actions 0, 0, 1.
  data.trajectories.push_back({{0, 1}, {0, 0}});
  data.trajectories.push_back({{0, 1}, {0, 1}});
  data.trajectories.push_back({{0, 2}, {1, 0}});
  auto pi = bc_policy(data);
  CHECK(pi.probs(0, 0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(pi.probs(0, 0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(pi.probs(0, 1, 0) == 0.5);  // never visited at h=0
  CHECK(pi.probs(1, 1, 0) == 0.5);  // visited twice, one of each action
  CHECK(pi.probs(1, 1, 1) == 0.5);
  CHECK(pi.probs(1, 2, 0) == 1.0);  // visited once with action 0
  CHECK(pi.probs(1, 0, 0) == 0.5);  // never visited at h=1
}

TEST_CASE("bc_policy converges to the expert at reachable states") {
  std::mt19937_64 rng(15);
  auto mdp = tiny_chain(6, 0.2);
  Tensor3 probs(6, 2, 2, 0.0);
  for (int h = 0; h < 6; ++h) {
    probs(h, 0, 0) = 0.8;
    probs(h, 0, 1) = 0.2;
    probs(h, 1, 0) = 0.3;
    probs(h, 1, 1) = 0.7;
  }
  auto expert = StochasticPolicy::validated(std::move(probs));
  auto exact = occupancy(mdp, expert);
  auto pi = bc_policy(collect_expert_data(mdp, expert, 20000, rng));
  for (int h = 0; h < 6; ++h) {
    for (int s = 0; s < 2; ++s) {
      double reach = 0.0;
      for (int a = 0; a < 2; ++a) reach += exact.d(h, s, a);
      if (reach < 0.01) continue;
      for (int a = 0; a < 2; ++a) {
        CHECK(std::abs(pi.probs(h, s, a) - expert.probs(h, s, a)) <= 0.05);
      }
    }
  }
}

TEST_CASE("collect_expert_data is deterministic for a fixed seed") {
  std::mt19937_64 mk(16);
  auto mdp = tiny_chain(5, 0.4);
  auto expert = always_action(5, 2, 2, 0);
  std::mt19937_64 r1(77), r2(77);
  auto d1 = collect_expert_data(mdp, expert, 10, r1);
  auto d2 = collect_expert_data(mdp, expert, 10, r2);
  for (int i = 0; i < 10; ++i) {
    CHECK(d1.trajectories[i].states == d2.trajectories[i].states);
    CHECK(d1.trajectories[i].actions == d2.trajectories[i].actions);
  }
}

TEST_CASE("empirical_occupancy rejects an empty set") {
  TrajectorySet data;
  data.horizon = 2;
  data.num_states = 2;
  data.num_actions = 2;
  CHECK_THROWS_AS(empirical_occupancy(data), std::invalid_argument);
}
