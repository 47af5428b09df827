#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oal/envs.hpp"
#include "oal/regret.hpp"
#include "oracles.hpp"

using namespace oal;

TEST_CASE("al_regret: hand example sums the positive part") {
  Tensor3 gap(1, 2, 2);
  gap(0, 0, 0) = 0.2;
  gap(0, 0, 1) = -0.1;
  gap(0, 1, 0) = 0.05;
  gap(0, 1, 1) = 0.0;
  CHECK(al_regret(gap) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(al_regret_bruteforce(gap) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("al_regret agrees with vertex enumeration on random gaps") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 250; ++trial) {
    // Shapes kept within the 2^12 enumeration budget.
    const int H = 1 + static_cast<int>(rng() % 3);
    const int S = 1 + static_cast<int>(rng() % 2);
    const int A = 1 + static_cast<int>(rng() % 2);
    auto gap = oracles::random_gap(rng, H, S, A);
    const double fast = al_regret(gap);
    const double slow = al_regret_bruteforce(gap);
    const double vertex = oracles::vertex_max_regret(gap);
    CHECK(std::abs(fast - slow) <= 1e-12);
    CHECK(std::abs(fast - vertex) <= 1e-12);
  }
}

TEST_CASE("al_regret: positive homogeneity and dominance over fixed costs") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    auto gap = oracles::random_gap(rng, 2, 2, 2);
    const double r = al_regret(gap);
    CHECK(r >= 0.0);

    const double lambda = oracles::uniform_in(rng, 0.0, 5.0);
    Tensor3 scaled = gap;
    for (double& x : scaled.v) x *= lambda;
    CHECK(al_regret(scaled) == doctest::Approx(lambda * r).epsilon(1e-12));

    // Any cost in the box scores at most the regret; the indicator of the
    // positive coordinates attains it.
    auto cost = oracles::random_cost(rng, 2, 2, 2);
    double score = 0.0, indicator = 0.0;
    for (std::size_t i = 0; i < gap.size(); ++i) {
      score += cost.c.v[i] * gap.v[i];
      indicator += gap.v[i] > 0.0 ? gap.v[i] : 0.0;
    }
    CHECK(score <= r + 1e-12);
    CHECK(indicator == doctest::Approx(r).epsilon(1e-15));
  }
}

TEST_CASE("al_regret_bruteforce refuses oversized gaps") {
  Tensor3 gap(3, 4, 2);  // 24 cells
  CHECK_THROWS_AS(al_regret_bruteforce(gap), std::invalid_argument);
}

TEST_CASE("expert_value_gap equals the occupancy inner product") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    auto mdp = oracles::random_mdp(rng, 4, 3, 2);
    auto pi = oracles::random_policy(rng, 4, 3, 2);
    auto expert = oracles::random_policy(rng, 4, 3, 2);
    auto cost = oracles::random_cost(rng, 4, 3, 2);

    auto d_pi = occupancy(mdp, pi);
    auto d_ex = occupancy(mdp, expert);
    double ip = 0.0;
    for (std::size_t i = 0; i < d_pi.d.size(); ++i) {
      ip += cost.c.v[i] * (d_pi.d.v[i] - d_ex.d.v[i]);
    }
    CHECK(expert_value_gap(mdp, pi, expert, cost) == doctest::Approx(ip).epsilon(1e-10));

    // And it never exceeds the single-episode AL regret.
    Tensor3 gap = d_pi.d;
    for (std::size_t i = 0; i < gap.size(); ++i) gap.v[i] -= d_ex.d.v[i];
    CHECK(expert_value_gap(mdp, pi, expert, cost) <= al_regret(gap) + 1e-10);
  }
}

TEST_CASE("accumulate: elementwise running sum, shape checked") {
  CumulativeGap gap(1, 1, 2);
  Tensor3 d1(1, 1, 2), de(1, 1, 2);
  d1(0, 0, 0) = 0.7;
  d1(0, 0, 1) = 0.3;
  de(0, 0, 0) = 0.4;
  de(0, 0, 1) = 0.6;
  accumulate(gap, d1, de);
  accumulate(gap, d1, de);
  CHECK(gap.episodes == 2);
  CHECK(gap.g(0, 0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(gap.g(0, 0, 1) == doctest::Approx(-0.6).epsilon(1e-15));

  Tensor3 wrong(2, 1, 2);
  CHECK_THROWS_AS(accumulate(gap, wrong, de), std::invalid_argument);
}

TEST_CASE("accumulate: identical tensors contribute exactly zero") {
  std::mt19937_64 rng(54);
  CumulativeGap gap(3, 2, 2);
  auto d = oracles::random_gap(rng, 3, 2, 2);
  for (int k = 0; k < 1000; ++k) accumulate(gap, d, d);
  for (double x : gap.g.v) CHECK(x == 0.0);
  CHECK(al_regret(gap) == 0.0);
}

TEST_CASE("build_curve matches a scripted recomputation and fills the log") {
  auto env = stochastic_chain(4, 0.25);
  std::mt19937_64 rng(55);
  auto data = collect_expert_data(env.mdp, env.expert, 5, rng);

  OalConfig cfg;
  cfg.episodes = 60;
  cfg.eval_every = 20;
  cfg.bonus_scale = 0.05;
  auto log = run(env.mdp, data, cfg, rng);
  auto expert_exact = occupancy(env.mdp, env.expert);
  auto curve = build_curve(log, expert_exact);

  REQUIRE(curve.episodes.size() == log.checkpoints.size());
  REQUIRE(curve.episodes.size() == 4);  // 0, 20, 40, 60
  CHECK(curve.episodes[0] == 0);
  CHECK(curve.regret[0] == 0.0);

  Tensor3 gap(4, 2, 2, 0.0);
  std::size_t ci = 1;
  for (std::size_t j = 0; j < log.episode_occupancies.size(); ++j) {
    for (std::size_t i = 0; i < gap.size(); ++i) {
      gap.v[i] += log.episode_occupancies[j].v[i] - expert_exact.d.v[i];
    }
    if ((j + 1) % 20 == 0) {
      double pos = 0.0;
      for (double x : gap.v) pos += x > 0.0 ? x : 0.0;
      CHECK(curve.regret[ci] == doctest::Approx(pos).epsilon(1e-12));
      CHECK(curve.episodes[ci] == static_cast<int>(j + 1));
      CHECK(log.checkpoints[ci].regret == curve.regret[ci]);
      ++ci;
    }
  }
  CHECK(ci == curve.episodes.size());
}

TEST_CASE("build_curve: replaying the exact expert occupancy gives zero regret") {
  auto env = stochastic_chain(6, 0.3);
  auto expert_exact = occupancy(env.mdp, env.expert);

  RunLog log;
  log.config.episodes = 500;
  log.config.eval_every = 100;
  for (int k = 0; k < 500; ++k) log.episode_occupancies.push_back(expert_exact.d);
  for (int e : {0, 100, 200, 300, 400, 500}) {
    log.checkpoints.push_back(RunCheckpoint{e, std::numeric_limits<double>::quiet_NaN()});
  }
  auto curve = build_curve(log, expert_exact);
  for (double r : curve.regret) CHECK(r == 0.0);
  for (const auto& cp : log.checkpoints) CHECK(cp.regret == 0.0);
}

TEST_CASE("build_curve rejects checkpoints past the logged episodes") {
  RunLog log;
  log.config.episodes = 10;
  log.episode_occupancies.assign(10, Tensor3(1, 1, 1, 0.0));
  log.checkpoints.push_back(RunCheckpoint{0, 0.0});
  log.checkpoints.push_back(RunCheckpoint{11, 0.0});
  OccupancyMeasure expert;
  expert.d = Tensor3(1, 1, 1, 0.0);
  CHECK_THROWS_AS(build_curve(log, expert), std::invalid_argument);
}
