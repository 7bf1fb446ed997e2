#include "armac/harness/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "armac/games/registry.h"
#include "json.hpp"

namespace armac {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw InputError("unknown config key '" + it.key() + "' in " + where);
    }
  }
}

}  // namespace

std::string RunConfig::out_prefix() const {
  if (!out.empty()) return out;
  std::ostringstream os;
  os << "run_" << game << "_" << algorithm << "_seed" << seed;
  return os.str();
}

ArmacConfig RunConfig::to_armac_config(int epochs) const {
  ArmacConfig c;
  c.epochs = epochs;
  c.k_act = k_act;
  c.k_learn = k_learn;
  c.batch_episodes = batch_episodes;
  c.lambda = lambda;
  c.reservoir_capacity = reservoir_capacity;
  c.epsilon_grid = epsilon_grid;
  c.candidate_eval_episodes = candidate_eval_episodes;
  c.eval_episodes_to_replay = eval_episodes_to_replay;
  c.reset_replay_per_epoch = reset_replay_per_epoch;
  c.replay_capacity = replay_capacity;
  c.eval_interval = eval_interval;
  c.head_kind = regressor == "feedforward" ? RegressorKind::kFeedforward
                                           : RegressorKind::kTabularMean;
  c.hidden = hidden;
  c.step_size = step_size;
  c.beta1 = beta1;
  c.beta2 = beta2;
  c.adam_epsilon = adam_epsilon;
  c.seed = seed;
  c.num_threads = num_threads;
  return c;
}

void RunConfig::validate() const {
  static const std::set<std::string> algorithms = {
      "cfr", "mccfr_os", "mc_rcfr", "armac", "armac_exact"};
  if (!algorithms.count(algorithm)) {
    throw InputError("unknown algorithm: " + algorithm);
  }
  bool known_game = false;
  for (const auto& id : list_game_ids()) known_game |= id == game;
  if (!known_game) throw InputError("unknown game id: " + game);
  if (iterations < 1) throw InputError("iterations must be >= 1");
  if (regressor != "tabular_mean" && regressor != "feedforward") {
    throw InputError("unknown regressor kind: " + regressor);
  }
  if (mccfr_epsilon <= 0.0 || mccfr_epsilon > 1.0) {
    throw InputError("mccfr epsilon must be in (0, 1]");
  }
  if (lambda < 0.0 || lambda > 1.0) throw InputError("lambda must be in [0,1]");
  if (k_act < 1 || k_learn < 1 || batch_episodes < 1) {
    throw InputError("k_act, k_learn and batch_episodes must be >= 1");
  }
  if (eval_interval < 0) throw InputError("eval_interval must be >= 0");
  if (num_threads < 1) throw InputError("num_threads must be >= 1");
  for (double e : epsilon_grid) {
    if (e < 0.0 || e > 1.0) throw InputError("epsilon grid entry out of range");
  }
}

RunConfig parse_run_config_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config root must be an object");

  reject_unknown_keys(
      j,
      {"game", "algorithm", "iterations", "epochs", "seed", "eval_interval",
       "out", "timing", "mccfr", "armac", "regressor"},
      "config root");
  if (j.contains("iterations") && j.contains("epochs")) {
    throw InputError("config sets both 'iterations' and 'epochs'");
  }

  RunConfig c;
  try {
    if (j.contains("game")) c.game = j["game"].get<std::string>();
    if (j.contains("algorithm")) c.algorithm = j["algorithm"].get<std::string>();
    if (j.contains("iterations")) c.iterations = j["iterations"].get<int>();
    if (j.contains("epochs")) c.iterations = j["epochs"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("eval_interval")) {
      c.eval_interval = j["eval_interval"].get<int>();
    }
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();

    if (j.contains("mccfr")) {
      const auto& m = j["mccfr"];
      reject_unknown_keys(m, {"epsilon"}, "mccfr");
      if (m.contains("epsilon")) c.mccfr_epsilon = m["epsilon"].get<double>();
    }
    if (j.contains("armac")) {
      const auto& a = j["armac"];
      reject_unknown_keys(
          a,
          {"k_act", "k_learn", "batch_episodes", "lambda",
           "reservoir_capacity", "epsilon_grid", "candidate_eval_episodes",
           "eval_episodes_to_replay", "reset_replay_per_epoch",
           "replay_capacity"},
          "armac");
      if (a.contains("k_act")) c.k_act = a["k_act"].get<int>();
      if (a.contains("k_learn")) c.k_learn = a["k_learn"].get<int>();
      if (a.contains("batch_episodes")) {
        c.batch_episodes = a["batch_episodes"].get<int>();
      }
      if (a.contains("lambda")) c.lambda = a["lambda"].get<double>();
      if (a.contains("reservoir_capacity")) {
        c.reservoir_capacity = a["reservoir_capacity"].get<int>();
      }
      if (a.contains("epsilon_grid")) {
        c.epsilon_grid = a["epsilon_grid"].get<std::vector<double>>();
      }
      if (a.contains("candidate_eval_episodes")) {
        c.candidate_eval_episodes = a["candidate_eval_episodes"].get<int>();
      }
      if (a.contains("eval_episodes_to_replay")) {
        c.eval_episodes_to_replay = a["eval_episodes_to_replay"].get<bool>();
      }
      if (a.contains("reset_replay_per_epoch")) {
        c.reset_replay_per_epoch = a["reset_replay_per_epoch"].get<bool>();
      }
      if (a.contains("replay_capacity")) {
        c.replay_capacity = a["replay_capacity"].get<int>();
      }
    }
    if (j.contains("regressor")) {
      const auto& r = j["regressor"];
      reject_unknown_keys(r,
                          {"kind", "hidden", "step_size", "beta1", "beta2",
                           "adam_epsilon"},
                          "regressor");
      if (r.contains("kind")) c.regressor = r["kind"].get<std::string>();
      if (r.contains("hidden")) c.hidden = r["hidden"].get<std::vector<int>>();
      if (r.contains("step_size")) c.step_size = r["step_size"].get<double>();
      if (r.contains("beta1")) c.beta1 = r["beta1"].get<double>();
      if (r.contains("beta2")) c.beta2 = r["beta2"].get<double>();
      if (r.contains("adam_epsilon")) {
        c.adam_epsilon = r["adam_epsilon"].get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config type error: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config_json(ss.str());
}

std::string run_config_to_json(const RunConfig& c) {
  json j{
      {"game", c.game},
      {"algorithm", c.algorithm},
      {"iterations", c.iterations},
      {"seed", c.seed},
      {"eval_interval", c.eval_interval},
      {"out", c.out},
      {"timing", c.timing},
      {"mccfr", {{"epsilon", c.mccfr_epsilon}}},
      {"armac",
       {{"k_act", c.k_act},
        {"k_learn", c.k_learn},
        {"batch_episodes", c.batch_episodes},
        {"lambda", c.lambda},
        {"reservoir_capacity", c.reservoir_capacity},
        {"epsilon_grid", c.epsilon_grid},
        {"candidate_eval_episodes", c.candidate_eval_episodes},
        {"eval_episodes_to_replay", c.eval_episodes_to_replay},
        {"reset_replay_per_epoch", c.reset_replay_per_epoch},
        {"replay_capacity", c.replay_capacity}}},
      {"regressor",
       {{"kind", c.regressor},
        {"hidden", c.hidden},
        {"step_size", c.step_size},
        {"beta1", c.beta1},
        {"beta2", c.beta2},
        {"adam_epsilon", c.adam_epsilon}}}};
  return j.dump(2);
}

}  // namespace armac
