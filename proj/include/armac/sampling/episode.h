#pragma once

#include "armac/sampling/trajectory.h"

namespace armac {

// One decision step of a stored episode. Advantage vectors come from the
// snapshot-j critic at acting time; no importance weights are stored
// anywhere in a record.
struct EpisodeStep {
  PlayerId acting = 0;
  InfoStateKey info_key;
  HistoryKey history_key;
  std::vector<Action> legal;
  Action action = 0;
  int action_pos = 0;
  std::vector<double> advantages;       // r over legal, snapshot-j critic
  ActionDistribution snapshot_policy;   // pi^j(s) over legal
};

struct EpisodeRecord {
  PlayerId learner = 0;
  int snapshot_index = 0;
  std::vector<double> returns;
  std::vector<EpisodeStep> steps;
  // When false the record may train the critic but not the mean-regret or
  // average-policy heads (episodes whose opponents ran off-snapshot
  // policies).
  bool head_eligible = true;
  bool truncated = false;
  HistoryKey final_history_key;
  InfoStateKey final_info_key;        // truncated episodes only
  std::vector<Action> final_legal;    // truncated episodes only
  uint64_t seed_id = 0;
};

// Evaluators of one stored snapshot, supplied by the trainer:
//   q(h, legal)      -> flattened [player-head][legal position] action values
//   policy(s, legal) -> pi^j at an information state
using CriticFn = std::function<std::vector<double>(
    const HistoryKey&, const std::vector<Action>&)>;
using StatePolicyFn = std::function<ActionDistribution(
    const InfoStateKey&, const std::vector<Action>&)>;

// Fills advantage vectors and snapshot policies for every decision step of
// the trajectory: r(a) = q_j(h,a) - v_j(h) for the acting player, with
// v_j(h) = sum_a pi^j(h,a) q_j(h,a).
EpisodeRecord build_episode_record(const Trajectory& trajectory,
                                   PlayerId learner, int snapshot_index,
                                   int num_players, const CriticFn& critic,
                                   const StatePolicyFn& snapshot_policy);

}  // namespace armac
