#pragma once

#include <iosfwd>
#include <optional>

#include "armac/harness/config.h"
#include "armac/solvers/best_response.h"

namespace armac {

// Versioned text format "armac-policy v1" (docs/formats.md): one line per
// information state, sorted by key, probabilities over the legal actions.
void write_policy_file(const std::string& path, const std::string& game_id,
                       const PolicyTable& policy);
// Throws InputError on parse errors or when the file names another game.
PolicyTable read_policy_file(const std::string& path,
                             const std::string& expect_game_id);

struct SolveOutcome {
  std::string csv_path;
  std::string policy_path;       // empty when no policy could be extracted
  std::optional<double> final_nash_conv_avg;
  uint64_t acting_steps = 0;
  int64_t first_plus2_episode = -1;  // gridworld runs
};

// Runs the configured algorithm, streaming MetricsRows to <out>.csv and
// writing the final policy to <out>.policy. Deterministic byte-for-byte in
// (config, seed) unless timing is enabled.
SolveOutcome cmd_solve(const RunConfig& config, std::ostream& log);

struct EvalOutcome {
  NashConvReport report;
};

EvalOutcome cmd_eval(const std::string& policy_path,
                     const std::string& game_id, std::ostream& out);

}  // namespace armac
