#include "oal/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "oal/regret.hpp"

namespace oal {

namespace {

// Scrambles the sequential cell indices so neighboring cells get unrelated
// engine states.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf, end);
}

std::string format_fixed(double x, int precision) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, precision);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf, end);
}

std::string format_general(double x, int precision) {
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, precision);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf, end);
}

std::string format_alpha(double alpha) {
  return std::isnan(alpha) ? std::string() : format_double(alpha);
}

// NaN alpha (no alpha dimension) sorts first and compares equal to itself.
double alpha_sort_key(double alpha) {
  return std::isnan(alpha) ? -std::numeric_limits<double>::infinity() : alpha;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

struct EnvSlot {
  EnvBundle env;
  OccupancyMeasure expert_exact;
  double alpha = kNoAlpha;
};

std::vector<EnvSlot> resolve_envs(const ExperimentSpec& spec) {
  std::vector<EnvSlot> out;
  switch (spec.env) {
    case EnvKind::chain:
      if (spec.alphas.empty()) throw std::invalid_argument("grid: no alpha values");
      for (double alpha : spec.alphas) {
        EnvSlot slot{stochastic_chain(spec.horizon, alpha), {}, alpha};
        slot.expert_exact = occupancy(slot.env.mdp, slot.env.expert);
        out.push_back(std::move(slot));
      }
      break;
    case EnvKind::fifty: {
      EnvSlot slot{fifty_start_mdp(), {}, kNoAlpha};
      slot.expert_exact = occupancy(slot.env.mdp, slot.env.expert);
      out.push_back(std::move(slot));
      break;
    }
    case EnvKind::custom: {
      if (!spec.custom_env) throw std::invalid_argument("grid: custom environment not loaded");
      EnvSlot slot{*spec.custom_env, {}, kNoAlpha};
      slot.expert_exact = occupancy(slot.env.mdp, slot.env.expert);
      out.push_back(std::move(slot));
      break;
    }
  }
  return out;
}

void validate_common(const ExperimentSpec& spec) {
  if (spec.seeds < 1) throw std::invalid_argument("grid: seeds must be >= 1");
  if (spec.trajectory_counts.empty()) throw std::invalid_argument("grid: no trajectory counts");
  for (int n : spec.trajectory_counts) {
    if (n < 1) throw std::invalid_argument("grid: trajectory counts must be >= 1");
  }
}

// Runs fn(cell_index) for every cell, pulling indices from a shared counter.
// The first failing cell (by index) aborts the grid with context attached.
void parallel_cells(std::size_t cells, int jobs,
                    const std::function<void(std::size_t)>& fn,
                    const std::function<std::string(std::size_t)>& describe) {
  if (jobs <= 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<int>(std::min<std::size_t>(jobs, cells));

  std::vector<std::string> errors(cells);
  std::vector<char> failed(cells, 0);
  auto worker_loop = [&](std::atomic<std::size_t>& next) {
    for (std::size_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        failed[i] = 1;
      }
    }
  };

  std::atomic<std::size_t> next{0};
  if (jobs <= 1) {
    worker_loop(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back([&] { worker_loop(next); });
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < cells; ++i) {
    if (failed[i]) throw std::runtime_error(describe(i) + ": " + errors[i]);
  }
}

struct Aggregate {
  double mean = 0.0;
  double ci95 = 0.0;
};

// Normal-approximation 95% interval; the half width is zero for a single
// seed, where the sample standard deviation is undefined.
Aggregate aggregate_values(const std::vector<double>& xs) {
  Aggregate out;
  const std::size_t n = xs.size();
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    out.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// Folds per-seed curves for one (variant, N, alpha) group into aggregate and
// raw rows. Curves must share one checkpoint layout.
void fold_group(const std::string& label, int trajectories, double alpha,
                const RegretCurve* curves, int seeds, GridResult& result) {
  const auto& episodes = curves[0].episodes;
  for (int s = 1; s < seeds; ++s) {
    if (curves[s].episodes != episodes) {
      throw std::logic_error("grid: checkpoint layouts disagree across seeds");
    }
  }
  std::vector<double> values(seeds);
  for (std::size_t ci = 0; ci < episodes.size(); ++ci) {
    for (int s = 0; s < seeds; ++s) {
      values[s] = curves[s].regret[ci];
      result.raw.push_back(RawRow{label, trajectories, alpha, s, episodes[ci],
                                  curves[s].regret[ci]});
    }
    const Aggregate agg = aggregate_values(values);
    result.rows.push_back(AggregateRow{label, trajectories, alpha, episodes[ci], agg.mean,
                                       agg.ci95, seeds});
  }
}

void sort_result(GridResult& result) {
  std::sort(result.rows.begin(), result.rows.end(),
            [](const AggregateRow& a, const AggregateRow& b) {
              return std::tie(a.variant, a.trajectories) < std::tie(b.variant, b.trajectories) ||
                     (std::tie(a.variant, a.trajectories) == std::tie(b.variant, b.trajectories) &&
                      std::make_pair(alpha_sort_key(a.alpha), a.episode) <
                          std::make_pair(alpha_sort_key(b.alpha), b.episode));
            });
  std::sort(result.raw.begin(), result.raw.end(), [](const RawRow& a, const RawRow& b) {
    return std::tie(a.variant, a.trajectories) < std::tie(b.variant, b.trajectories) ||
           (std::tie(a.variant, a.trajectories) == std::tie(b.variant, b.trajectories) &&
            std::make_tuple(alpha_sort_key(a.alpha), a.seed_index, a.episode) <
                std::make_tuple(alpha_sort_key(b.alpha), b.seed_index, b.episode));
  });
}

}  // namespace

std::string variant_label(bool ucb, bool bc_init, bool expert_model_init) {
  std::string label = "oal";
  if (!ucb) label += "-no-explore";
  if (bc_init) label += "-bc-init";
  if (expert_model_init) label += "-model-init";
  return label;
}

GridResult run_grid(const ExperimentSpec& spec) {
  validate_common(spec);
  if (spec.variants.empty()) throw std::invalid_argument("grid: no variants");
  for (const Variant& v : spec.variants) {
    if (v.label.empty()) throw std::invalid_argument("grid: variant label empty");
  }

  const auto envs = resolve_envs(spec);
  const std::size_t cells_per_group = static_cast<std::size_t>(spec.seeds);
  const std::size_t groups = spec.variants.size() * spec.trajectory_counts.size() * envs.size();
  const std::size_t cells = groups * cells_per_group;

  struct Cell {
    std::size_t variant = 0, n = 0, env = 0;
    int seed = 0;
    std::uint64_t engine_seed = 0;
  };
  std::vector<Cell> plan;
  plan.reserve(cells);
  std::uint64_t index = 0;
  for (std::size_t v = 0; v < spec.variants.size(); ++v) {
    for (std::size_t n = 0; n < spec.trajectory_counts.size(); ++n) {
      for (std::size_t e = 0; e < envs.size(); ++e) {
        for (int s = 0; s < spec.seeds; ++s) {
          plan.push_back(Cell{v, n, e, s, spec.base_seed + index});
          ++index;
        }
      }
    }
  }

  std::vector<RegretCurve> curves(cells);
  parallel_cells(
      cells, spec.jobs,
      [&](std::size_t i) {
        const Cell& cell = plan[i];
        const Variant& variant = spec.variants[cell.variant];
        const EnvSlot& slot = envs[cell.env];
        std::mt19937_64 engine(splitmix64(cell.engine_seed));
        auto data = collect_expert_data(slot.env.mdp, slot.env.expert,
                                        spec.trajectory_counts[cell.n], engine);
        OalConfig cfg = spec.oal;
        cfg.bonus_scale = variant.ucb ? spec.oal.bonus_scale : 0.0;
        cfg.bc_init = variant.bc_init;
        cfg.expert_model_init = variant.expert_model_init;
        auto log = run(slot.env.mdp, data, cfg, engine);
        curves[i] = build_curve(log, slot.expert_exact);
      },
      [&](std::size_t i) {
        const Cell& cell = plan[i];
        return "grid cell failed: variant=" + spec.variants[cell.variant].label +
               " N=" + std::to_string(spec.trajectory_counts[cell.n]) +
               " alpha=" + format_alpha(envs[cell.env].alpha) +
               " seed=" + std::to_string(cell.seed);
      });

  GridResult result;
  std::size_t base = 0;
  for (const Variant& v : spec.variants) {
    for (int n : spec.trajectory_counts) {
      for (const EnvSlot& slot : envs) {
        fold_group(v.label, n, slot.alpha, &curves[base], spec.seeds, result);
        base += cells_per_group;
      }
    }
  }
  sort_result(result);
  return result;
}

GridResult run_bc_comparison(const ExperimentSpec& spec) {
  validate_common(spec);
  if (spec.env != EnvKind::fifty) {
    throw std::invalid_argument("bc comparison: fifty-start environment required");
  }
  const EnvBundle env = fifty_start_mdp();
  const OccupancyMeasure expert_exact = occupancy(env.mdp, env.expert);
  const auto schedule = checkpoint_schedule(spec.oal.episodes, spec.oal.eval_every);

  const std::size_t cells =
      spec.trajectory_counts.size() * static_cast<std::size_t>(spec.seeds);
  std::vector<RegretCurve> bc_curves(cells), oal_curves(cells);

  parallel_cells(
      cells, spec.jobs,
      [&](std::size_t i) {
        const std::size_t n_idx = i / spec.seeds;
        std::mt19937_64 engine(splitmix64(spec.base_seed + i));
        // One demonstration set drives both arms.
        auto data = collect_expert_data(env.mdp, env.expert,
                                        spec.trajectory_counts[n_idx], engine);

        // Frozen clone: the policy never changes, so its regret is exactly
        // episode * per-episode gap.
        auto clone = bc_policy(data);
        auto d_clone = occupancy(env.mdp, clone);
        Tensor3 gap = d_clone.d;
        for (std::size_t j = 0; j < gap.size(); ++j) gap.v[j] -= expert_exact.d.v[j];
        const double per_episode = al_regret(gap);
        RegretCurve bc;
        bc.episodes = schedule;
        bc.regret.reserve(schedule.size());
        for (int e : schedule) bc.regret.push_back(static_cast<double>(e) * per_episode);
        bc_curves[i] = std::move(bc);

        OalConfig cfg = spec.oal;
        cfg.bc_init = true;
        auto log = run(env.mdp, data, cfg, engine);
        oal_curves[i] = build_curve(log, expert_exact);
      },
      [&](std::size_t i) {
        return "bc comparison cell failed: N=" +
               std::to_string(spec.trajectory_counts[i / spec.seeds]) +
               " seed=" + std::to_string(static_cast<int>(i % spec.seeds));
      });

  GridResult result;
  std::size_t base = 0;
  for (int n : spec.trajectory_counts) {
    fold_group("bc-only", n, kNoAlpha, &bc_curves[base], spec.seeds, result);
    fold_group("oal-bc-init", n, kNoAlpha, &oal_curves[base], spec.seeds, result);
    base += static_cast<std::size_t>(spec.seeds);
  }
  sort_result(result);
  return result;
}

void emit_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
  std::vector<AggregateRow> sorted = rows;
  GridResult tmp;
  tmp.rows = std::move(sorted);
  sort_result(tmp);
  std::string out = "variant,N,alpha,episode,mean_regret,ci95,seeds\n";
  for (const AggregateRow& r : tmp.rows) {
    out += r.variant;
    out += ',';
    out += std::to_string(r.trajectories);
    out += ',';
    out += format_alpha(r.alpha);
    out += ',';
    out += std::to_string(r.episode);
    out += ',';
    out += format_double(r.mean_regret);
    out += ',';
    out += format_double(r.ci95);
    out += ',';
    out += std::to_string(r.seeds);
    out += '\n';
  }
  write_text(path, out);
}

void emit_raw_csv(const std::vector<RawRow>& rows, const std::string& path) {
  std::vector<RawRow> sorted = rows;
  GridResult tmp;
  tmp.raw = std::move(sorted);
  sort_result(tmp);
  std::string out = "variant,N,alpha,seed,episode,regret\n";
  for (const RawRow& r : tmp.raw) {
    out += r.variant;
    out += ',';
    out += std::to_string(r.trajectories);
    out += ',';
    out += format_alpha(r.alpha);
    out += ',';
    out += std::to_string(r.seed_index);
    out += ',';
    out += std::to_string(r.episode);
    out += ',';
    out += format_double(r.regret);
    out += '\n';
  }
  write_text(path, out);
}

std::vector<AggregateRow> parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || line != "variant,N,alpha,episode,mean_regret,ci95,seeds") {
    throw std::runtime_error(path + ": unexpected header");
  }
  std::vector<AggregateRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 7) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 7 fields");
    }
    auto parse_int = [&](const std::string& s) {
      int v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad integer " + s);
      }
      return v;
    };
    auto parse_double = [&](const std::string& s) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad float " + s);
      }
      return v;
    };
    AggregateRow r;
    r.variant = fields[0];
    r.trajectories = parse_int(fields[1]);
    r.alpha = fields[2].empty() ? kNoAlpha : parse_double(fields[2]);
    r.episode = parse_int(fields[3]);
    r.mean_regret = parse_double(fields[4]);
    r.ci95 = parse_double(fields[5]);
    r.seeds = parse_int(fields[6]);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct PlotPoint {
  double x = 0.0;  // already transformed (log10 for trajectory counts)
  double mean = 0.0;
  double ci = 0.0;
};

}  // namespace

void emit_svg(const std::vector<AggregateRow>& rows, const std::string& path,
              const PlotSpec& plot) {
  if (rows.empty()) throw std::invalid_argument("emit_svg: no rows");

  // Line keys: the variant label, qualified when the slice still varies in a
  // second dimension.
  std::vector<int> n_values;
  std::vector<double> a_values;
  for (const AggregateRow& r : rows) {
    if (std::find(n_values.begin(), n_values.end(), r.trajectories) == n_values.end()) {
      n_values.push_back(r.trajectories);
    }
    if (!std::isnan(r.alpha) &&
        std::find(a_values.begin(), a_values.end(), r.alpha) == a_values.end()) {
      a_values.push_back(r.alpha);
    }
  }
  std::sort(n_values.begin(), n_values.end());
  std::sort(a_values.begin(), a_values.end());
  const bool many_n = n_values.size() > 1;
  const bool many_a = a_values.size() > 1;

  const bool x_is_n = plot.x == PlotSpec::XAxis::trajectories;
  // For regret-vs-N charts only the final checkpoint of each cell is plotted.
  std::map<std::tuple<std::string, int, double>, int> final_episode;
  if (x_is_n) {
    for (const AggregateRow& r : rows) {
      auto key = std::make_tuple(r.variant, r.trajectories, alpha_sort_key(r.alpha));
      auto it = final_episode.find(key);
      if (it == final_episode.end() || r.episode > it->second) final_episode[key] = r.episode;
    }
  }

  std::map<std::string, std::vector<PlotPoint>> lines;
  for (const AggregateRow& r : rows) {
    if (x_is_n) {
      auto key = std::make_tuple(r.variant, r.trajectories, alpha_sort_key(r.alpha));
      if (r.episode != final_episode[key]) continue;
    }
    std::string key = r.variant;
    if (many_a) key += " a=" + format_alpha(r.alpha);
    if (many_n && !x_is_n) key += " N=" + std::to_string(r.trajectories);
    PlotPoint p;
    p.x = x_is_n ? std::log10(static_cast<double>(r.trajectories))
                 : static_cast<double>(r.episode);
    p.mean = r.mean_regret;
    p.ci = r.ci95;
    lines[key].push_back(p);
  }
  for (auto& [key, pts] : lines) {
    std::sort(pts.begin(), pts.end(),
              [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
  }

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& [key, pts] : lines) {
    for (const PlotPoint& p : pts) {
      x_min = std::min(x_min, p.x);
      x_max = std::max(x_max, p.x);
      y_min = std::min(y_min, p.mean - p.ci);
      y_max = std::max(y_max, p.mean + p.ci);
    }
  }
  const double x_pad = x_max > x_min ? 0.05 * (x_max - x_min) : 0.5;
  const double y_pad = y_max > y_min ? 0.05 * (y_max - y_min) : std::max(0.5, 0.05 * std::abs(y_max));
  x_min -= x_pad;
  x_max += x_pad;
  y_min -= y_pad;
  y_max += y_pad;

  const double W = 720, H = 480, L = 70, R = 24, T = 44, B = 52;
  auto px = [&](double x) { return L + (x - x_min) / (x_max - x_min) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y_min) / (y_max - y_min) * (H - T - B); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" "
         "viewBox=\"0 0 720 480\" font-family=\"sans-serif\" data-x-min=\"" +
         format_double(x_min) + "\" data-x-max=\"" + format_double(x_max) + "\" data-y-min=\"" +
         format_double(y_min) + "\" data-y-max=\"" + format_double(y_max) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"480\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + format_fixed(W / 2, 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + plot.title + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + format_fixed(L, 2) + "\" y1=\"" + format_fixed(H - B, 2) + "\" x2=\"" +
         format_fixed(W - R, 2) + "\" y2=\"" + format_fixed(H - B, 2) +
         "\" stroke=\"#000000\"/>\n";
  svg += "<line x1=\"" + format_fixed(L, 2) + "\" y1=\"" + format_fixed(T, 2) + "\" x2=\"" +
         format_fixed(L, 2) + "\" y2=\"" + format_fixed(H - B, 2) + "\" stroke=\"#000000\"/>\n";

  // X ticks: the trajectory counts themselves on the log axis, five even
  // stops otherwise.
  if (x_is_n) {
    for (int n : n_values) {
      const double x = px(std::log10(static_cast<double>(n)));
      svg += "<line x1=\"" + format_fixed(x, 2) + "\" y1=\"" + format_fixed(H - B, 2) +
             "\" x2=\"" + format_fixed(x, 2) + "\" y2=\"" + format_fixed(H - B + 5, 2) +
             "\" stroke=\"#000000\"/>\n";
      svg += "<text x=\"" + format_fixed(x, 2) + "\" y=\"" + format_fixed(H - B + 18, 2) +
             "\" text-anchor=\"middle\" font-size=\"11\">" + std::to_string(n) + "</text>\n";
    }
  } else {
    for (int t = 0; t <= 4; ++t) {
      const double xv = x_min + (x_max - x_min) * t / 4.0;
      const double x = px(xv);
      svg += "<line x1=\"" + format_fixed(x, 2) + "\" y1=\"" + format_fixed(H - B, 2) +
             "\" x2=\"" + format_fixed(x, 2) + "\" y2=\"" + format_fixed(H - B + 5, 2) +
             "\" stroke=\"#000000\"/>\n";
      svg += "<text x=\"" + format_fixed(x, 2) + "\" y=\"" + format_fixed(H - B + 18, 2) +
             "\" text-anchor=\"middle\" font-size=\"11\">" + format_general(xv, 5) + "</text>\n";
    }
  }
  for (int t = 0; t <= 4; ++t) {
    const double yv = y_min + (y_max - y_min) * t / 4.0;
    const double y = py(yv);
    svg += "<line x1=\"" + format_fixed(L - 5, 2) + "\" y1=\"" + format_fixed(y, 2) + "\" x2=\"" +
           format_fixed(L, 2) + "\" y2=\"" + format_fixed(y, 2) + "\" stroke=\"#000000\"/>\n";
    svg += "<text x=\"" + format_fixed(L - 8, 2) + "\" y=\"" + format_fixed(y + 4, 2) +
           "\" text-anchor=\"end\" font-size=\"11\">" + format_general(yv, 4) + "</text>\n";
  }
  svg += "<text x=\"" + format_fixed((L + W - R) / 2, 2) + "\" y=\"" + format_fixed(H - 14, 2) +
         "\" text-anchor=\"middle\" font-size=\"12\">" +
         (x_is_n ? "expert trajectories" : "episode") + "</text>\n";
  svg += "<text x=\"18\" y=\"" + format_fixed((T + H - B) / 2, 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 " +
         format_fixed((T + H - B) / 2, 2) + ")\">mean regret</text>\n";

  // Curves with vertical 95% CI bars, legend in line-key order.
  int color_idx = 0;
  double legend_y = T + 14;
  for (const auto& [key, pts] : lines) {
    const char* color = kPalette[color_idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
    for (const PlotPoint& p : pts) {
      svg += "<line class=\"errbar\" x1=\"" + format_fixed(px(p.x), 2) + "\" y1=\"" +
             format_fixed(py(p.mean - p.ci), 2) + "\" x2=\"" + format_fixed(px(p.x), 2) +
             "\" y2=\"" + format_fixed(py(p.mean + p.ci), 2) + "\" stroke=\"" + color +
             "\" stroke-width=\"1\"/>\n";
    }
    svg += "<polyline class=\"curve\" fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const PlotPoint& p : pts) {
      if (!first) svg += ' ';
      first = false;
      svg += format_fixed(px(p.x), 2) + "," + format_fixed(py(p.mean), 2);
    }
    svg += "\"/>\n";
    svg += "<rect x=\"" + format_fixed(W - R - 170, 2) + "\" y=\"" +
           format_fixed(legend_y - 9, 2) + "\" width=\"12\" height=\"12\" fill=\"" + color +
           "\"/>\n";
    svg += "<text x=\"" + format_fixed(W - R - 154, 2) + "\" y=\"" + format_fixed(legend_y + 1, 2) +
           "\" font-size=\"11\">" + key + "</text>\n";
    legend_y += 18;
    ++color_idx;
  }
  svg += "</svg>\n";
  write_text(path, svg);
}

}  // namespace oal
