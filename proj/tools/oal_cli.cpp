// Experiment runner: seed fan-out over variant grids, CSV/SVG emission, and a
// selftest mode that cross-checks the fast paths against independent oracles.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oal/envs.hpp"
#include "oal/harness.hpp"
#include "oal/io.hpp"
#include "oal/regret.hpp"

namespace {

using nlohmann::json;

struct CliRun {
  oal::ExperimentSpec spec;
  std::string out = "results.csv";
  std::string svg;
  bool bc_compare = false;
};

std::string raw_csv_path(const std::string& out) {
  std::filesystem::path p(out);
  auto stem = p.stem().string();
  auto ext = p.extension().string();
  p.replace_filename(stem + "_raw" + (ext.empty() ? ".csv" : ext));
  return p.string();
}

// Config file fields mirror the flags; any flag given on the command line
// wins over the file value.
void apply_config_file(const std::string& path, CliRun& run) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  auto& spec = run.spec;
  if (j.contains("horizon")) spec.horizon = j["horizon"].get<int>();
  if (j.contains("alphas")) spec.alphas = j["alphas"].get<std::vector<double>>();
  if (j.contains("trajectories")) {
    spec.trajectory_counts = j["trajectories"].get<std::vector<int>>();
  }
  if (j.contains("seeds")) spec.seeds = j["seeds"].get<int>();
  if (j.contains("base_seed")) spec.base_seed = j["base_seed"].get<std::uint64_t>();
  if (j.contains("jobs")) spec.jobs = j["jobs"].get<int>();
  if (j.contains("episodes")) spec.oal.episodes = j["episodes"].get<int>();
  if (j.contains("eval_every")) spec.oal.eval_every = j["eval_every"].get<int>();
  if (j.contains("bonus_scale")) spec.oal.bonus_scale = j["bonus_scale"].get<double>();
  if (j.contains("delta")) spec.oal.delta = j["delta"].get<double>();
  if (j.contains("initial_cost")) spec.oal.initial_cost = j["initial_cost"].get<double>();
  if (j.contains("policy_step")) spec.oal.policy_step = j["policy_step"].get<double>();
  if (j.contains("cost_step")) spec.oal.cost_step = j["cost_step"].get<double>();
  if (j.contains("out")) run.out = j["out"].get<std::string>();
  if (j.contains("svg")) run.svg = j["svg"].get<std::string>();
  if (j.contains("bc_compare")) run.bc_compare = j["bc_compare"].get<bool>();
  if (j.contains("variants")) {
    spec.variants.clear();
    for (const auto& v : j["variants"]) {
      oal::Variant variant;
      variant.ucb = v.value("ucb", true);
      variant.bc_init = v.value("bc_init", false);
      variant.expert_model_init = v.value("expert_model_init", false);
      variant.label = v.value("label", oal::variant_label(variant.ucb, variant.bc_init,
                                                          variant.expert_model_init));
      spec.variants.push_back(std::move(variant));
    }
  }
}

// Shared run flags; returns the subcommand for presence queries.
struct RunFlags {
  std::string config;
  int episodes = 10000;
  std::vector<int> trajectories;
  int seeds = 100;
  std::uint64_t base_seed = 0;
  double bonus_scale = 1.0;
  bool no_explore = false;
  bool bc_init = false;
  bool expert_model_init = false;
  int eval_every = 10;
  std::string out;
  std::string svg;
  int jobs = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "JSON experiment spec; flags override file values");
  cmd->add_option("--episodes", f.episodes, "episodes per run (K)");
  cmd->add_option("--trajectories", f.trajectories, "expert trajectory counts (N grid)");
  cmd->add_option("--seeds", f.seeds, "seeds per grid cell");
  cmd->add_option("--base-seed", f.base_seed, "seed origin; cell seeds are consecutive");
  cmd->add_option("--bonus-scale", f.bonus_scale, "exploration bonus multiplier");
  cmd->add_flag("--no-explore", f.no_explore, "disable the exploration bonus");
  cmd->add_flag("--bc-init", f.bc_init, "start from the behavioral-cloning policy");
  cmd->add_flag("--expert-model-init", f.expert_model_init,
                "warm-start transition counters with the expert data");
  cmd->add_option("--eval-every", f.eval_every, "checkpoint stride");
  cmd->add_option("--out", f.out, "aggregate CSV path (per-seed CSV lands next to it)");
  cmd->add_option("--svg", f.svg, "also draw a line chart to this path");
  cmd->add_option("--jobs", f.jobs, "worker threads (0 = all cores)");
}

void apply_run_flags(const CLI::App* cmd, const RunFlags& f, CliRun& run) {
  auto& spec = run.spec;
  if (cmd->count("--episodes")) spec.oal.episodes = f.episodes;
  if (cmd->count("--trajectories")) spec.trajectory_counts = f.trajectories;
  if (cmd->count("--seeds")) spec.seeds = f.seeds;
  if (cmd->count("--base-seed")) spec.base_seed = f.base_seed;
  if (cmd->count("--bonus-scale")) spec.oal.bonus_scale = f.bonus_scale;
  if (cmd->count("--eval-every")) spec.oal.eval_every = f.eval_every;
  if (cmd->count("--out")) run.out = f.out;
  if (cmd->count("--svg")) run.svg = f.svg;
  if (cmd->count("--jobs")) spec.jobs = f.jobs;
  // Any variant flag replaces the variant set with the single flag-built one.
  if (cmd->count("--no-explore") || cmd->count("--bc-init") ||
      cmd->count("--expert-model-init")) {
    oal::Variant v;
    v.ucb = !f.no_explore;
    v.bc_init = f.bc_init;
    v.expert_model_init = f.expert_model_init;
    v.label = oal::variant_label(v.ucb, v.bc_init, v.expert_model_init);
    spec.variants = {v};
  }
}

void emit_outputs(const oal::GridResult& result, const CliRun& run) {
  oal::emit_csv(result.rows, run.out);
  const std::string raw = raw_csv_path(run.out);
  oal::emit_raw_csv(result.raw, raw);
  std::cout << "wrote " << result.rows.size() << " aggregate rows to " << run.out << "\n";
  std::cout << "wrote " << result.raw.size() << " per-seed rows to " << raw << "\n";
  if (!run.svg.empty()) {
    oal::PlotSpec plot;
    // Several N values: final regret against N. One N value: regret curve.
    plot.x = run.spec.trajectory_counts.size() > 1 ? oal::PlotSpec::XAxis::trajectories
                                                   : oal::PlotSpec::XAxis::episode;
    plot.title = plot.x == oal::PlotSpec::XAxis::trajectories
                     ? "final AL regret vs expert trajectories"
                     : "AL regret over episodes";
    oal::emit_svg(result.rows, run.svg, plot);
    std::cout << "wrote chart to " << run.svg << "\n";
  }
}

int run_selftest() {
  int failures = 0;
  auto report = [&](const char* name, bool ok, const std::string& detail = "") {
    std::cout << "selftest: " << name << (ok ? " ... ok" : " ... FAIL") << detail << "\n";
    if (!ok) ++failures;
  };

  // Chain expert occupancy follows the closed-form geometric law.
  {
    auto env = oal::stochastic_chain(8, 0.3);
    auto occ = oal::occupancy(env.mdp, env.expert);
    double err = 0.0;
    for (int h = 0; h < 8; ++h) {
      err = std::max(err, std::abs(occ.d(h, 0, 0) - std::pow(0.7, h)));
      err = std::max(err, std::abs(occ.d(h, 1, 0) - (1.0 - std::pow(0.7, h))));
    }
    report("chain occupancy vs geometric law", err <= 1e-12);
  }

  // Occupancy-cost duality: <c, d^pi> equals the evaluated start value.
  {
    std::mt19937_64 rng(123);
    auto env = oal::stochastic_chain(6, 0.45);
    oal::Tensor3 probs(6, 2, 2);
    for (int h = 0; h < 6; ++h) {
      for (int s = 0; s < 2; ++s) {
        double u = 0.2 + 0.6 * oal::uniform01(rng);
        probs(h, s, 0) = u;
        probs(h, s, 1) = 1.0 - u;
      }
    }
    oal::StochasticPolicy pi = oal::StochasticPolicy::validated(probs);
    oal::Tensor3 cv(6, 2, 2);
    for (double& x : cv.v) x = oal::uniform01(rng);
    auto cost = oal::CostFunction::validated(cv);
    auto d = oal::occupancy(env.mdp, pi);
    auto tables = oal::evaluate(env.mdp, cost, pi);
    double ip = oal::inner_product(cost, d);
    double v0 = oal::initial_value(env.mdp, tables);
    report("occupancy-cost duality", std::abs(ip - v0) <= 1e-10);
  }

  // Fast AL regret equals the vertex enumeration over the cost box.
  {
    std::mt19937_64 rng(321);
    double err = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      oal::Tensor3 gap(3, 2, 2);
      for (double& x : gap.v) x = 2.0 * oal::uniform01(rng) - 1.0;
      err = std::max(err, std::abs(oal::al_regret(gap) - oal::al_regret_bruteforce(gap)));
    }
    report("al regret vs vertex enumeration", err <= 1e-12);
  }

  // Exploration bonus coefficient against an independently computed constant:
  // H=2, S=2, A=2, K=100, delta'=1/30, n=4 gives sqrt(16 log(144000)) / 2.
  {
    const double coeff = oal::detail::bonus_coefficient(2, 2, 2, 100, 1.0 / 30.0, 1.0);
    const double frozen = 9.747848410211614;
    report("bonus coefficient frozen value", std::abs(coeff / 2.0 - frozen) <= 1e-12);
  }

  // Grid determinism: two invocations, byte-identical CSV.
  {
    oal::ExperimentSpec spec;
    spec.env = oal::EnvKind::chain;
    spec.horizon = 4;
    spec.alphas = {0.25};
    spec.trajectory_counts = {2};
    spec.variants = {{"oal", true, false, false}};
    spec.seeds = 2;
    spec.oal.episodes = 60;
    spec.oal.eval_every = 30;
    spec.oal.bonus_scale = 0.05;
    spec.jobs = 1;
    auto a = oal::run_grid(spec);
    auto b = oal::run_grid(spec);
    bool same = a.rows.size() == b.rows.size();
    for (std::size_t i = 0; same && i < a.rows.size(); ++i) {
      same = a.rows[i].mean_regret == b.rows[i].mean_regret && a.rows[i].ci95 == b.rows[i].ci95;
    }
    auto dir = std::filesystem::temp_directory_path() / "oal_selftest";
    std::filesystem::create_directories(dir);
    auto p1 = (dir / "a.csv").string(), p2 = (dir / "b.csv").string();
    oal::emit_csv(a.rows, p1);
    oal::emit_csv(b.rows, p2);
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    report("grid determinism, byte-identical CSV", same && s1 == s2 && !s1.empty());

    auto parsed = oal::parse_csv(p1);
    bool round = parsed.size() == a.rows.size();
    for (std::size_t i = 0; round && i < parsed.size(); ++i) {
      round = parsed[i].mean_regret == a.rows[i].mean_regret && parsed[i].ci95 == a.rows[i].ci95;
    }
    report("csv parse-back round-trip", round);
  }

  if (failures == 0) {
    std::cout << "selftest: all checks passed\n";
    return 0;
  }
  std::cout << "selftest: " << failures << " check(s) FAILED\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabular apprenticeship-learning lab: online min-max runs over small MDPs"};
  app.require_subcommand(1);

  auto* chain = app.add_subcommand("chain", "stochastic two-state chain grid");
  RunFlags chain_flags;
  int horizon = 32;
  double alpha = 0.2;
  std::vector<double> alphas;
  chain->add_option("--horizon", horizon, "chain horizon");
  chain->add_option("--alpha", alpha, "slip probability");
  chain->add_option("--alphas", alphas, "slip probability grid (overrides --alpha)");
  add_run_flags(chain, chain_flags);

  auto* fifty = app.add_subcommand("fifty", "fifty-start funnel grid");
  RunFlags fifty_flags;
  bool bc_compare = false;
  fifty->add_flag("--bc-compare", bc_compare,
                  "compare frozen behavioral cloning against the bc-initialized learner");
  add_run_flags(fifty, fifty_flags);

  auto* custom = app.add_subcommand("custom", "grid over an MDP loaded from a file");
  RunFlags custom_flags;
  std::string mdp_path, expert_path;
  custom->add_option("--mdp", mdp_path, "MDP JSON file")->required();
  custom->add_option("--expert", expert_path,
                     "expert policy JSON file (optional when embedded in the MDP file)");
  add_run_flags(custom, custom_flags);

  app.add_subcommand("selftest", "cross-check fast paths against independent oracles");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.get_subcommand("selftest")->parsed()) return run_selftest();

    CliRun run;
    if (chain->parsed()) {
      run.spec.env = oal::EnvKind::chain;
      run.out = "chain.csv";
      if (chain->count("--config")) apply_config_file(chain_flags.config, run);
      if (chain->count("--horizon")) run.spec.horizon = horizon;
      if (chain->count("--alphas")) {
        run.spec.alphas = alphas;
      } else if (chain->count("--alpha")) {
        run.spec.alphas = {alpha};
      }
      apply_run_flags(chain, chain_flags, run);
      emit_outputs(oal::run_grid(run.spec), run);
      return 0;
    }

    if (fifty->parsed()) {
      run.spec.env = oal::EnvKind::fifty;
      run.out = "fifty.csv";
      if (fifty->count("--config")) apply_config_file(fifty_flags.config, run);
      if (fifty->count("--bc-compare")) run.bc_compare = bc_compare;
      apply_run_flags(fifty, fifty_flags, run);
      auto result = run.bc_compare ? oal::run_bc_comparison(run.spec) : oal::run_grid(run.spec);
      emit_outputs(result, run);
      return 0;
    }

    if (custom->parsed()) {
      run.spec.env = oal::EnvKind::custom;
      run.out = "custom.csv";
      if (custom->count("--config")) apply_config_file(custom_flags.config, run);
      auto loaded = oal::io::load_mdp(mdp_path);
      oal::EnvBundle env{std::move(loaded.mdp), {}};
      if (!expert_path.empty()) {
        env.expert = oal::io::load_policy(expert_path);
      } else if (loaded.expert) {
        env.expert = *loaded.expert;
      } else {
        throw std::runtime_error(mdp_path +
                                 ": no expert_policy embedded and no --expert file given");
      }
      if (env.expert.probs.H != env.mdp.horizon || env.expert.probs.S != env.mdp.num_states ||
          env.expert.probs.A != env.mdp.num_actions) {
        throw std::runtime_error("expert policy dimensions disagree with the MDP");
      }
      run.spec.custom_env = std::move(env);
      apply_run_flags(custom, custom_flags, run);
      emit_outputs(oal::run_grid(run.spec), run);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
