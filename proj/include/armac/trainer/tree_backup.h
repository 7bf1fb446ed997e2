#pragma once

#include "armac/sampling/episode.h"

namespace armac {

// Tree-Backup(lambda) regression targets for the critic, one target per
// player head at every decision step of the episode. Undiscounted and
// episodic: rewards are zero until the terminal utility, chance transitions
// are part of the environment, and the trace is cut by the target policy's
// probability of the action actually taken:
//
//   G_k = v(h_{k+1}) + lambda * pi(a_{k+1}|s_{k+1}) * (G_{k+1} - q(h_{k+1}, a_{k+1}))
//
// with v(h) = sum_a pi(a|s) q(h,a) and G at the last decision equal to the
// terminal utility. Truncated episodes bootstrap from v at the state the
// episode was cut off in.
//
// `critic` evaluates the current q over [head][legal position];
// `target_policy` evaluates pi^t at an information state. Returned as
// [step][head].
std::vector<std::vector<double>> tree_backup_targets(
    const EpisodeRecord& episode, int num_players, double lambda,
    const CriticFn& critic, const StatePolicyFn& target_policy);

}  // namespace armac
