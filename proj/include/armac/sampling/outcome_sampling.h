#pragma once

#include <map>

#include "armac/sampling/trajectory.h"
#include "armac/solvers/game_tree.h"

namespace armac {

// Sampled counterfactual values from one trajectory rho ~ (mu_i, pi_{-i}):
//
//   q~^c(s,a | rho) = u_i(z) * eta_i^pi(ha -> z) / eta_i^mu(z)
//
// for (s,a) pairs where player i acted on rho, and 0 for every other pair.
// The correction divides by the learner's own sampling probabilities only;
// chance and opponent probabilities cancel by construction, so the tail
// uses the target policy and no full importance weights appear.
struct SampledCFEstimate {
  PlayerId player = 0;
  std::map<std::pair<InfoStateKey, Action>, double> entries;
  uint64_t sample_count = 0;
};

// `target` supplies pi_i at the learner's recorded states (uniform where
// missing). Behavior probabilities along the trajectory must be positive;
// trajectories sampled by sample_episode always satisfy this.
SampledCFEstimate outcome_sampling_estimate(const Trajectory& trajectory,
                                            const PolicyTable& target,
                                            PlayerId learner);

struct MccfrConfig {
  int iterations = 100000;
  double exploration = 0.6;  // epsilon of the learner's behavior mix
  int eval_interval = 0;     // 0 disables the NashConv trace
};

struct MccfrTracePoint {
  int iteration = 0;
  uint64_t acting_steps = 0;
  double nash_conv = 0.0;
};

struct MccfrResult {
  PolicyTable average_policy;
  std::vector<MccfrTracePoint> nash_conv_trace;
  uint64_t acting_steps = 0;
};

// Plain outcome-sampling MCCFR: alternating learner, epsilon-on-policy
// behavior for the learner, on-policy opponent, Eq.-2 estimates feeding
// tabular regret matching. The tabular degenerate case of MC-RCFR.
MccfrResult mccfr_outcome_sampling_run(const Game& game, const GameTree& tree,
                                       const MccfrConfig& config, Rng& rng);

struct RegressorSpec;

// MC-RCFR: the same outcome-sampling loop with the per-visit immediate
// regrets and current-policy targets regressed by pluggable backends
// instead of summed in tables. With the tabular-mean backend the derived
// policies coincide with plain outcome-sampling MCCFR (running means only
// rescale regrets per state, which regret matching ignores).
MccfrResult mc_rcfr_run(const Game& game, const GameTree& tree,
                        const MccfrConfig& config,
                        const RegressorSpec& backing, Rng& rng);

}  // namespace armac
