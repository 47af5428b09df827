#include "oal/io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace oal::io {

using nlohmann::json;

namespace {

json open_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

json tensor3_to_json(const Tensor3& t) {
  json out = json::array();
  for (int h = 0; h < t.H; ++h) {
    json hs = json::array();
    for (int s = 0; s < t.S; ++s) {
      json row = json::array();
      for (int a = 0; a < t.A; ++a) row.push_back(t(h, s, a));
      hs.push_back(std::move(row));
    }
    out.push_back(std::move(hs));
  }
  return out;
}

Tensor3 tensor3_from_json(const json& j, int H, int S, int A, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != H) {
    throw std::runtime_error(what + ": expected [H][S][A] array with H=" + std::to_string(H));
  }
  Tensor3 t(H, S, A);
  for (int h = 0; h < H; ++h) {
    const json& hs = j[h];
    if (!hs.is_array() || static_cast<int>(hs.size()) != S) {
      throw std::runtime_error(what + "[h=" + std::to_string(h) + "]: expected " +
                               std::to_string(S) + " states");
    }
    for (int s = 0; s < S; ++s) {
      const json& row = hs[s];
      if (!row.is_array() || static_cast<int>(row.size()) != A) {
        throw std::runtime_error(what + "[h=" + std::to_string(h) + "][s=" + std::to_string(s) +
                                 "]: expected " + std::to_string(A) + " actions");
      }
      for (int a = 0; a < A; ++a) t(h, s, a) = row[a].get<double>();
    }
  }
  return t;
}

}  // namespace

LoadedMdp load_mdp(const std::string& path) {
  const json j = open_json(path);
  try {
    const int H = j.at("horizon").get<int>();
    const int S = j.at("num_states").get<int>();
    const int A = j.at("num_actions").get<int>();
    auto mu = j.at("initial_dist").get<std::vector<double>>();

    const json& dyn = j.at("dynamics");
    if (!dyn.is_array() || static_cast<int>(dyn.size()) != H) {
      throw std::runtime_error("dynamics: expected [H][S][A][S'] array");
    }
    Tensor4 p(H, S, A, S);
    for (int h = 0; h < H; ++h) {
      for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
          const json& row = dyn.at(h).at(s).at(a);
          if (!row.is_array() || static_cast<int>(row.size()) != S) {
            throw std::runtime_error("dynamics[h=" + std::to_string(h) + "][s=" +
                                     std::to_string(s) + "][a=" + std::to_string(a) +
                                     "]: expected " + std::to_string(S) + " entries");
          }
          for (int s2 = 0; s2 < S; ++s2) p(h, s, a, s2) = row[s2].get<double>();
        }
      }
    }
    LoadedMdp out{TabularMdp(H, S, A, std::move(mu), std::move(p)), std::nullopt};
    if (j.contains("expert_policy")) {
      out.expert = StochasticPolicy::validated(
          tensor3_from_json(j.at("expert_policy"), H, S, A, "expert_policy"));
    }
    return out;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_mdp(const std::string& path, const TabularMdp& mdp, const StochasticPolicy* expert) {
  json j;
  j["horizon"] = mdp.horizon;
  j["num_states"] = mdp.num_states;
  j["num_actions"] = mdp.num_actions;
  j["initial_dist"] = mdp.initial_dist;
  json dyn = json::array();
  for (int h = 0; h < mdp.horizon; ++h) {
    json hs = json::array();
    for (int s = 0; s < mdp.num_states; ++s) {
      json sa = json::array();
      for (int a = 0; a < mdp.num_actions; ++a) {
        json row = json::array();
        for (int s2 = 0; s2 < mdp.num_states; ++s2) row.push_back(mdp.dynamics(h, s, a, s2));
        sa.push_back(std::move(row));
      }
      hs.push_back(std::move(sa));
    }
    dyn.push_back(std::move(hs));
  }
  j["dynamics"] = std::move(dyn);
  if (expert != nullptr) j["expert_policy"] = tensor3_to_json(expert->probs);
  write_file(path, j.dump(2) + "\n");
}

StochasticPolicy load_policy(const std::string& path) {
  const json j = open_json(path);
  try {
    const int H = j.at("horizon").get<int>();
    const int S = j.at("num_states").get<int>();
    const int A = j.at("num_actions").get<int>();
    return StochasticPolicy::validated(tensor3_from_json(j.at("probs"), H, S, A, "probs"));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_policy(const std::string& path, const StochasticPolicy& pi) {
  json j;
  j["horizon"] = pi.probs.H;
  j["num_states"] = pi.probs.S;
  j["num_actions"] = pi.probs.A;
  j["probs"] = tensor3_to_json(pi.probs);
  write_file(path, j.dump(2) + "\n");
}

TrajectorySet load_trajectories(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  TrajectorySet data;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!have_header) {
      if (!j.contains("horizon")) {
        throw std::runtime_error(path + ":1: first line must be the header object");
      }
      data.horizon = j.at("horizon").get<int>();
      data.num_states = j.at("num_states").get<int>();
      data.num_actions = j.at("num_actions").get<int>();
      have_header = true;
      continue;
    }
    const json& steps = j.at("steps");
    if (static_cast<int>(steps.size()) != data.horizon) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": trajectory length != horizon");
    }
    Trajectory t;
    t.states.resize(data.horizon);
    t.actions.resize(data.horizon);
    for (int h = 0; h < data.horizon; ++h) {
      const int s = steps[h].at(0).get<int>();
      const int a = steps[h].at(1).get<int>();
      if (s < 0 || s >= data.num_states || a < 0 || a >= data.num_actions) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": step " +
                                 std::to_string(h) + " out of range (s=" + std::to_string(s) +
                                 ", a=" + std::to_string(a) + ")");
      }
      t.states[h] = s;
      t.actions[h] = a;
    }
    data.trajectories.push_back(std::move(t));
  }
  if (!have_header) throw std::runtime_error(path + ": empty trajectory file");
  return data;
}

void save_trajectories(const std::string& path, const TrajectorySet& data) {
  json header;
  header["horizon"] = data.horizon;
  header["num_states"] = data.num_states;
  header["num_actions"] = data.num_actions;
  std::string text = header.dump() + "\n";
  for (const Trajectory& t : data.trajectories) {
    json steps = json::array();
    for (int h = 0; h < data.horizon; ++h) {
      steps.push_back(json::array({t.states[h], t.actions[h]}));
    }
    json j;
    j["steps"] = std::move(steps);
    text += j.dump() + "\n";
  }
  write_file(path, text);
}

std::string counters_to_json(const VisitCounters& counters) {
  json j;
  j["horizon"] = counters.horizon;
  j["num_states"] = counters.num_states;
  j["num_actions"] = counters.num_actions;
  j["episodes_recorded"] = counters.episodes_recorded;
  j["n"] = counters.n.v;
  j["m"] = counters.m.v;
  return j.dump();
}

VisitCounters counters_from_json(const std::string& text) {
  const json j = json::parse(text);
  VisitCounters c(j.at("horizon").get<int>(), j.at("num_states").get<int>(),
                  j.at("num_actions").get<int>());
  c.episodes_recorded = j.at("episodes_recorded").get<std::int64_t>();
  auto n = j.at("n").get<std::vector<std::int64_t>>();
  auto m = j.at("m").get<std::vector<std::int64_t>>();
  if (n.size() != c.n.v.size() || m.size() != c.m.v.size()) {
    throw std::runtime_error("counters: array sizes disagree with dimensions");
  }
  c.n.v = std::move(n);
  c.m.v = std::move(m);
  return c;
}

std::string run_log_to_json(const RunLog& log) {
  json j;
  json cfg;
  cfg["episodes"] = log.config.episodes;
  cfg["policy_step"] = log.config.policy_step;
  cfg["cost_step"] = log.config.cost_step;
  cfg["delta"] = log.config.delta;
  cfg["bonus_scale"] = log.config.bonus_scale;
  cfg["initial_cost"] = log.config.initial_cost;
  cfg["bc_init"] = log.config.bc_init;
  cfg["expert_model_init"] = log.config.expert_model_init;
  cfg["eval_every"] = log.config.eval_every;
  j["config"] = std::move(cfg);
  json cps = json::array();
  for (const RunCheckpoint& cp : log.checkpoints) {
    json c;
    c["episode"] = cp.episode;
    c["regret"] = cp.regret;
    cps.push_back(std::move(c));
  }
  j["checkpoints"] = std::move(cps);
  j["final_policy"] = tensor3_to_json(log.final_policy.probs);
  j["final_cost"] = tensor3_to_json(log.final_cost.c);
  return j.dump(2) + "\n";
}

void save_run_log(const std::string& path, const RunLog& log) {
  write_file(path, run_log_to_json(log));
}

}  // namespace oal::io
