#pragma once

#include <optional>
#include <string>

#include "oal/expert.hpp"
#include "oal/learner.hpp"
#include "oal/mdp.hpp"
#include "oal/model.hpp"

namespace oal::io {

struct LoadedMdp {
  TabularMdp mdp;
  std::optional<StochasticPolicy> expert;
};

// MDP files are a single JSON object: horizon, num_states, num_actions,
// initial_dist [S], dynamics [H][S][A][S'], optional expert_policy [H][S][A].
// Loaders reject normalization violations beyond 1e-12, naming the cell.
LoadedMdp load_mdp(const std::string& path);
void save_mdp(const std::string& path, const TabularMdp& mdp,
              const StochasticPolicy* expert = nullptr);

// Policy files carry the dimensions plus a probs [H][S][A] array.
StochasticPolicy load_policy(const std::string& path);
void save_policy(const std::string& path, const StochasticPolicy& pi);

// Trajectory files are JSON lines: one header object
// {"horizon":..,"num_states":..,"num_actions":..} followed by one
// {"steps":[[s,a],...]} object per trajectory.
TrajectorySet load_trajectories(const std::string& path);
void save_trajectories(const std::string& path, const TrajectorySet& data);

// Counters serialize to a single JSON object for checkpoint/resume.
std::string counters_to_json(const VisitCounters& counters);
VisitCounters counters_from_json(const std::string& text);

// Run logs serialize config echo, per-checkpoint episode/regret, and the
// final policy and cost tables (not the per-episode occupancies).
std::string run_log_to_json(const RunLog& log);
void save_run_log(const std::string& path, const RunLog& log);

}  // namespace oal::io
