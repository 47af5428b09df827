#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oal/model.hpp"
#include "oracles.hpp"

using namespace oal;

TEST_CASE("record_trajectory: n counts every step, m stops one short") {
  VisitCounters c(3, 2, 2);
  Trajectory t{{0, 1, 1}, {0, 1, 0}};
  record_trajectory(c, t);
  record_trajectory(c, t);
  CHECK(c.episodes_recorded == 2);
  CHECK(c.n(0, 0, 0) == 2);
  CHECK(c.n(1, 1, 1) == 2);
  CHECK(c.n(2, 1, 0) == 2);
  CHECK(c.m(0, 0, 0, 1) == 2);
  CHECK(c.m(1, 1, 1, 1) == 2);
  // No transition row exists for the final step.
  CHECK(c.m.H == 2);
}

TEST_CASE("count conservation: sum_s' m == n for non-final steps") {
  std::mt19937_64 rng(21);
  auto mdp = oracles::random_mdp(rng, 5, 3, 2);
  auto pi = oracles::random_policy(rng, 5, 3, 2);
  VisitCounters c(5, 3, 2);
  for (int e = 0; e < 200; ++e) record_trajectory(c, sample_trajectory(mdp, pi, rng));
  for (int h = 0; h < 4; ++h) {
    for (int s = 0; s < 3; ++s) {
      for (int a = 0; a < 2; ++a) {
        std::int64_t row = 0;
        for (int s2 = 0; s2 < 3; ++s2) row += c.m(h, s, a, s2);
        CHECK(row == c.n(h, s, a));
      }
    }
  }
  // Per-step totals equal the number of recorded episodes.
  for (int h = 0; h < 5; ++h) {
    std::int64_t total = 0;
    for (int s = 0; s < 3; ++s) {
      for (int a = 0; a < 2; ++a) total += c.n(h, s, a);
    }
    CHECK(total == 200);
  }
}

TEST_CASE("estimate_dynamics: ratios where observed, uniform elsewhere") {
  VisitCounters c(3, 2, 2);
  // Four visits to (h=0, s=0, a=0): successors 0, 0, 0, 1.
  for (int i = 0; i < 3; ++i) record_trajectory(c, Trajectory{{0, 0, 0}, {0, 0, 0}});
  record_trajectory(c, Trajectory{{0, 1, 1}, {0, 0, 0}});
  auto dyn = estimate_dynamics(c);
  CHECK(dyn.p_bar(0, 0, 0, 0) == 0.75);
  CHECK(dyn.p_bar(0, 0, 0, 1) == 0.25);
  // Unvisited cell falls back to uniform.
  CHECK(dyn.p_bar(0, 1, 1, 0) == 0.5);
  CHECK(dyn.p_bar(0, 1, 1, 1) == 0.5);
  // Final-step rows are emitted as uniform even though visited.
  CHECK(dyn.p_bar(2, 0, 0, 0) == 0.5);
  CHECK(dyn.p_bar(2, 0, 0, 1) == 0.5);
  // Every row is a distribution.
  for (int h = 0; h < 3; ++h) {
    for (int s = 0; s < 2; ++s) {
      for (int a = 0; a < 2; ++a) {
        double sum = 0.0;
        for (int s2 = 0; s2 < 2; ++s2) sum += dyn.p_bar(h, s, a, s2);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("estimate_dynamics converges to the true dynamics on visited cells") {
  std::mt19937_64 rng(22);
  auto mdp = oracles::random_mdp(rng, 4, 3, 2);
  auto pi = oracles::random_policy(rng, 4, 3, 2);
  VisitCounters c(4, 3, 2);
  for (int e = 0; e < 40000; ++e) record_trajectory(c, sample_trajectory(mdp, pi, rng));
  auto dyn = estimate_dynamics(c);
  for (int h = 0; h < 3; ++h) {
    for (int s = 0; s < 3; ++s) {
      for (int a = 0; a < 2; ++a) {
        if (c.n(h, s, a) < 1000) continue;
        for (int s2 = 0; s2 < 3; ++s2) {
          CHECK(std::abs(dyn.p_bar(h, s, a, s2) - mdp.dynamics(h, s, a, s2)) <= 0.05);
        }
      }
    }
  }
}

TEST_CASE("ucb_bonus: frozen spot value and monotonicity") {
  // H=2, S=2, A=2, K=100, delta' = 1/30, n = 4:
  // sqrt(4*4*2 * log(3*4*4*100*30) / 4) = sqrt(32 * log(144000) / 4)
  VisitCounters c(2, 2, 2);
  for (int i = 0; i < 4; ++i) record_trajectory(c, Trajectory{{0, 0}, {0, 0}});
  auto bonus = ucb_bonus(c, 100, 1.0 / 30.0, 1.0);
  CHECK(bonus.b(0, 0, 0) == doctest::Approx(9.747848410211614).epsilon(1e-12));
  // Unvisited cells use max(n, 1): twice the visited-4 bonus.
  CHECK(bonus.b(0, 1, 1) == doctest::Approx(2.0 * 9.747848410211614).epsilon(1e-12));
  CHECK(bonus.b(0, 1, 1) > bonus.b(0, 0, 0));

  // scale = 0 disables exploration entirely.
  auto off = ucb_bonus(c, 100, 1.0 / 30.0, 0.0);
  for (double x : off.b.v) CHECK(x == 0.0);

  // scale multiplies through.
  auto half = ucb_bonus(c, 100, 1.0 / 30.0, 0.5);
  CHECK(half.b(0, 0, 0) == doctest::Approx(0.5 * 9.747848410211614).epsilon(1e-12));
}

TEST_CASE("bonus decreases as visits accumulate") {
  VisitCounters c(2, 2, 2);
  double prev = ucb_bonus(c, 1000, 1.0 / 30.0, 1.0).b(0, 0, 0);
  for (int round = 0; round < 5; ++round) {
    for (int i = 0; i < 8; ++i) record_trajectory(c, Trajectory{{0, 0}, {0, 0}});
    const double cur = ucb_bonus(c, 1000, 1.0 / 30.0, 1.0).b(0, 0, 0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("warm_start_from_expert matches manual recording") {
  std::mt19937_64 rng(23);
  auto mdp = oracles::random_mdp(rng, 4, 3, 2);
  auto pi = oracles::random_policy(rng, 4, 3, 2);
  auto data = collect_expert_data(mdp, pi, 25, rng);
  VisitCounters a(4, 3, 2), b(4, 3, 2);
  warm_start_from_expert(a, data);
  for (const auto& t : data.trajectories) record_trajectory(b, t);
  CHECK(a.n.v == b.n.v);
  CHECK(a.m.v == b.m.v);
  CHECK(a.episodes_recorded == 25);
}
