#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "oal/envs.hpp"
#include "oal/learner.hpp"

namespace oal {

enum class EnvKind { chain, fifty, custom };

// One algorithm configuration inside a grid. ucb=false zeroes the exploration
// bonus; the initialization bits mirror OalConfig.
struct Variant {
  std::string label;
  bool ucb = true;
  bool bc_init = false;
  bool expert_model_init = false;
};

std::string variant_label(bool ucb, bool bc_init, bool expert_model_init);

struct ExperimentSpec {
  EnvKind env = EnvKind::chain;
  int horizon = 32;                     // chain only
  std::vector<double> alphas = {0.2};   // chain only; ignored otherwise
  std::optional<EnvBundle> custom_env;  // required when env == custom
  std::vector<int> trajectory_counts = {1, 5, 20, 100};
  std::vector<Variant> variants = {{"oal", true, false, false}};
  int seeds = 100;
  std::uint64_t base_seed = 0;
  OalConfig oal;
  int jobs = 0;  // 0 = hardware concurrency
};

// No alpha dimension (fifty / custom grids): the CSV cell stays empty.
inline constexpr double kNoAlpha = std::numeric_limits<double>::quiet_NaN();

struct AggregateRow {
  std::string variant;
  int trajectories = 0;
  double alpha = kNoAlpha;
  int episode = 0;
  double mean_regret = 0.0;
  double ci95 = 0.0;  // 1.96 * sample std / sqrt(seeds); 0 when seeds == 1
  int seeds = 0;
};

struct RawRow {
  std::string variant;
  int trajectories = 0;
  double alpha = kNoAlpha;
  int seed_index = 0;
  int episode = 0;
  double regret = 0.0;
};

struct GridResult {
  std::vector<AggregateRow> rows;  // sorted by (variant, N, alpha, episode)
  std::vector<RawRow> raw;         // sorted, plus seed_index before episode
};

// One regret curve per (variant, N, alpha, seed) cell, aggregated per
// checkpoint. Each cell draws from an engine seeded by base_seed plus the
// cell's position in the (variant, N, alpha, seed) enumeration, so results do
// not depend on execution order or the number of worker threads.
GridResult run_grid(const ExperimentSpec& spec);

// Fifty-start protocol: per (N, seed) one shared demonstration set; "bc-only"
// scores the frozen cloned policy analytically (regret grows linearly, one
// exact per-episode gap), "oal-bc-init" runs the full loop from that policy.
GridResult run_bc_comparison(const ExperimentSpec& spec);

// header variant,N,alpha,episode,mean_regret,ci95,seeds; LF endings; floats
// in shortest round-trip form; rows sorted as in GridResult.
void emit_csv(const std::vector<AggregateRow>& rows, const std::string& path);

// header variant,N,alpha,seed,episode,regret; same conventions.
void emit_raw_csv(const std::vector<RawRow>& rows, const std::string& path);

std::vector<AggregateRow> parse_csv(const std::string& path);

struct PlotSpec {
  enum class XAxis { episode, trajectories } x = XAxis::episode;
  std::string title;
};

// Self-contained line chart: one polyline per line key (variant label,
// extended with N or alpha when several are present), one vertical 95% CI bar
// per point, axis ranges covering mean +/- ci with 5% padding. The
// trajectory-count axis is log10-scaled. Byte-deterministic for fixed input.
void emit_svg(const std::vector<AggregateRow>& rows, const std::string& path,
              const PlotSpec& plot);

}  // namespace oal
