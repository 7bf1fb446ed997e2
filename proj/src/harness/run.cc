#include "armac/harness/run.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "armac/harness/metrics.h"
#include "armac/sampling/outcome_sampling.h"
#include "armac/solvers/cfr.h"
#include "armac/trainer/exact_armac.h"
#include "json.hpp"

namespace armac {

namespace {

std::string fmt_prob(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class WallClock {
 public:
  explicit WallClock(bool enabled) : enabled_(enabled) {}
  std::optional<double> elapsed() const {
    if (!enabled_) return std::nullopt;
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(now - start_).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// Auto cadence: every 10 epochs for the epoch-based trainers, 1% of the
// run for iteration-based solvers.
int resolved_eval_interval(const RunConfig& config) {
  if (config.eval_interval > 0) return config.eval_interval;
  if (config.algorithm == "armac" || config.algorithm == "armac_exact") {
    return 10;
  }
  return std::max(1, config.iterations / 100);
}

void save_snapshot_dir(const ArmacTrainer& trainer, const RunConfig& config,
                       const std::string& prefix) {
  const std::string dir = prefix + "_snapshots";
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["format"] = "armac-snapshots v1";
  manifest["game"] = config.game;
  manifest["seed"] = config.seed;
  nlohmann::json entries = nlohmann::json::array();
  const auto snap = trainer.latest_snapshot();
  const std::string base = dir + "/epoch_" + std::to_string(snap->epoch);
  save_regressor_file(*snap->w_head, base + "_w.ckpt");
  save_regressor_file(*snap->avg_head, base + "_avg.ckpt");
  save_regressor_file(*snap->critic, base + "_critic.ckpt");
  entries.push_back({{"epoch", snap->epoch},
                     {"acting_steps", snap->acting_steps},
                     {"w", base + "_w.ckpt"},
                     {"avg", base + "_avg.ckpt"},
                     {"critic", base + "_critic.ckpt"}});
  manifest["entries"] = entries;
  std::ofstream out(dir + "/manifest.json");
  out << manifest.dump(2) << "\n";
}

}  // namespace

void write_policy_file(const std::string& path, const std::string& game_id,
                       const PolicyTable& policy) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for writing: " + path);
  out << "armac-policy v1\n";
  out << "game " << game_id << "\n";
  out << "entries " << policy.size() << "\n";
  for (const auto& [key, dist] : policy.entries()) {
    out << static_cast<int>(key.player) << " " << hex_encode(key.bytes) << " "
        << dist.size();
    for (double p : dist) out << " " << fmt_prob(p);
    out << "\n";
  }
}

PolicyTable read_policy_file(const std::string& path,
                             const std::string& expect_game_id) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open policy file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "armac-policy v1") {
    throw InputError("bad policy file header");
  }
  std::string tag, game_id;
  if (!(in >> tag >> game_id) || tag != "game") {
    throw InputError("bad policy file game line");
  }
  if (game_id != expect_game_id) {
    throw InputError("policy file is for game '" + game_id +
                     "', expected '" + expect_game_id + "'");
  }
  size_t entries = 0;
  if (!(in >> tag >> entries) || tag != "entries") {
    throw InputError("bad policy file entries line");
  }
  PolicyTable table;
  for (size_t i = 0; i < entries; ++i) {
    int player = 0;
    std::string hex;
    size_t n = 0;
    if (!(in >> player >> hex >> n) || n == 0 || n > 64) {
      throw InputError("bad policy file entry");
    }
    InfoStateKey key;
    key.player = player;
    key.bytes = hex_decode(hex);
    ActionDistribution dist(n);
    double sum = 0.0;
    for (double& p : dist) {
      if (!(in >> p) || p < -1e-12) throw InputError("bad policy entry prob");
      sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-6) {
      throw InputError("policy entry does not sum to 1");
    }
    table.set(key, std::move(dist));
  }
  return table;
}

SolveOutcome cmd_solve(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto game = make_game(config.game);
  const WallClock clock(config.timing);
  const int eval_interval = resolved_eval_interval(config);

  std::optional<GameTree> tree;
  if (game->descriptor().num_players >= 2) {
    try {
      tree.emplace(GameTree::build(*game));
    } catch (const EnumerationCapError& e) {
      log << "warning: " << e.what()
          << "; NashConv columns will stay empty\n";
    }
  }

  SolveOutcome outcome;
  const std::string prefix = config.out_prefix();
  outcome.csv_path = prefix + ".csv";
  outcome.policy_path = prefix + ".policy";

  auto finish_policy = [&](const PolicyTable& policy) {
    write_policy_file(outcome.policy_path, config.game, policy);
  };

  if (config.algorithm == "cfr" || config.algorithm == "armac_exact") {
    if (!tree) {
      throw InputError(config.algorithm + " requires an enumerable game");
    }
    CsvWriter csv(outcome.csv_path, {});
    std::optional<CfrSolver> cfr;
    std::optional<ExactArmacTrainer> exact;
    if (config.algorithm == "cfr") {
      cfr.emplace(*tree);
    } else {
      exact.emplace(*tree);
    }
    for (int t = 1; t <= config.iterations; ++t) {
      if (cfr) {
        cfr->iterate();
      } else {
        exact->epoch();
      }
      if (t % eval_interval == 0 || t == config.iterations) {
        MetricsRow row;
        row.epoch = t;
        row.acting_steps = t;
        const PolicyTable avg =
            cfr ? cfr->average_policy() : exact->average_policy();
        const PolicyTable cur =
            cfr ? cfr->current_policy() : exact->current_policy();
        row.nash_conv_avg = nash_conv(*tree, avg);
        row.nash_conv_current = nash_conv(*tree, cur);
        row.wall_clock_s = clock.elapsed();
        csv.write_row(row);
        outcome.final_nash_conv_avg = row.nash_conv_avg;
      }
    }
    outcome.acting_steps = config.iterations;
    finish_policy(cfr ? cfr->average_policy() : exact->average_policy());
    return outcome;
  }

  if (config.algorithm == "mccfr_os" || config.algorithm == "mc_rcfr") {
    if (!tree) {
      throw InputError(config.algorithm + " requires an enumerable game");
    }
    MccfrConfig mc;
    mc.iterations = config.iterations;
    mc.exploration = config.mccfr_epsilon;
    mc.eval_interval = eval_interval;
    Rng rng = Rng::derive(config.seed, 0x05c7);
    MccfrResult result;
    if (config.algorithm == "mccfr_os") {
      result = mccfr_outcome_sampling_run(*game, *tree, mc, rng);
    } else {
      RegressorSpec backing;
      backing.kind = config.regressor == "feedforward"
                         ? RegressorKind::kFeedforward
                         : RegressorKind::kTabularMean;
      backing.hidden = config.hidden;
      backing.step_size = config.step_size;
      backing.beta1 = config.beta1;
      backing.beta2 = config.beta2;
      backing.adam_epsilon = config.adam_epsilon;
      result = mc_rcfr_run(*game, *tree, mc, backing, rng);
    }
    CsvWriter csv(outcome.csv_path, {});
    for (const auto& point : result.nash_conv_trace) {
      MetricsRow row;
      row.epoch = point.iteration;
      row.acting_steps = point.acting_steps;
      row.nash_conv_avg = point.nash_conv;
      row.wall_clock_s = clock.elapsed();
      csv.write_row(row);
      outcome.final_nash_conv_avg = point.nash_conv;
    }
    outcome.acting_steps = result.acting_steps;
    finish_policy(result.average_policy);
    return outcome;
  }

  // armac (sampled)
  RunConfig adjusted = config;
  adjusted.eval_interval = eval_interval;
  ArmacConfig ac = adjusted.to_armac_config(config.iterations);
  ArmacTrainer trainer(game, tree ? &*tree : nullptr, ac);

  std::vector<std::string> cand_names;
  for (const auto& c : trainer.candidates()) {
    cand_names.push_back(candidate_name(c));
  }
  CsvWriter csv(outcome.csv_path, cand_names);
  ArmacRunResult result = trainer.run();
  for (const auto& m : result.metrics) {
    MetricsRow row;
    row.epoch = m.epoch;
    row.acting_steps = m.acting_steps;
    if (m.nash_conv_avg >= 0.0) row.nash_conv_avg = m.nash_conv_avg;
    if (m.nash_conv_current >= 0.0) row.nash_conv_current = m.nash_conv_current;
    row.candidate_returns = m.candidate_returns;
    row.primary_candidate = m.primary_candidate;
    row.wall_clock_s = clock.elapsed();
    csv.write_row(row);
    if (row.nash_conv_avg) outcome.final_nash_conv_avg = row.nash_conv_avg;
  }
  outcome.acting_steps = result.acting_steps;
  outcome.first_plus2_episode = result.first_plus2_episode;
  if (tree) {
    finish_policy(result.average_policy);
  } else {
    outcome.policy_path.clear();
  }
  save_snapshot_dir(trainer, config, prefix);
  return outcome;
}

EvalOutcome cmd_eval(const std::string& policy_path,
                     const std::string& game_id, std::ostream& out) {
  const auto game = make_game(game_id);
  if (game->descriptor().num_players < 2) {
    throw InputError("eval requires a two-player game");
  }
  const PolicyTable policy = read_policy_file(policy_path, game_id);
  const GameTree tree = GameTree::build(*game);

  // Reject policies that name unknown states or wrong action counts.
  for (const auto& [key, dist] : policy.entries()) {
    const int s = tree.info_state_id(key);
    if (s < 0) throw InputError("policy entry does not match any game state");
    if (dist.size() != tree.info_state(s).legal.size()) {
      throw InputError("policy entry has wrong action count");
    }
  }

  EvalOutcome outcome;
  outcome.report = nash_conv_report(tree, tree.table_to_local(policy));
  out << "nash_conv " << outcome.report.nash_conv << "\n";
  for (size_t p = 0; p < outcome.report.br_values.size(); ++p) {
    out << "br_value_p" << p << " " << outcome.report.br_values[p] << "\n";
    out << "policy_value_p" << p << " " << outcome.report.policy_values[p]
        << "\n";
  }
  return outcome;
}

}  // namespace armac
