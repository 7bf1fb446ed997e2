#pragma once

#include <string>

#include "armac/trainer/armac_trainer.h"

namespace armac {

// Full description of one experiment run. Mirrors the JSON config format
// one-to-one; CLI flags override file values. Unknown JSON keys are
// rejected.
struct RunConfig {
  std::string game = "kuhn";
  // cfr | mccfr_os | mc_rcfr | armac | armac_exact
  std::string algorithm = "cfr";
  int iterations = 10000;  // CFR/MCCFR iterations, or epochs for armac
  uint64_t seed = 1;
  int eval_interval = 10;
  // Output prefix: metrics go to <out>.csv, the final policy to
  // <out>.policy. Empty selects "run_<game>_<algorithm>_seed<seed>".
  std::string out;
  bool timing = false;  // fill the wall_clock_s column (off: reproducible)

  double mccfr_epsilon = 0.6;

  // armac / mc_rcfr sub-config.
  int k_act = 512;
  int k_learn = 100;
  int batch_episodes = 64;
  double lambda = 0.5;
  int reservoir_capacity = 1024;
  std::vector<double> epsilon_grid = {0.0, 0.01, 0.05};
  int candidate_eval_episodes = 128;
  bool eval_episodes_to_replay = true;
  bool reset_replay_per_epoch = true;
  int replay_capacity = 8192;

  // regressor sub-config (armac heads, mc_rcfr backing store).
  std::string regressor = "tabular_mean";  // or "feedforward"
  std::vector<int> hidden = {64, 64};
  double step_size = 5e-5;
  double beta1 = 0.0;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;

  int num_threads = 1;

  std::string out_prefix() const;
  ArmacConfig to_armac_config(int epochs) const;
  void validate() const;
};

RunConfig parse_run_config_json(const std::string& json_text);
RunConfig load_run_config_file(const std::string& path);
std::string run_config_to_json(const RunConfig& config);

}  // namespace armac
