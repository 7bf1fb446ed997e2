#pragma once

#include "armac/sampling/trajectory.h"
#include "armac/solvers/oracles.h"

namespace armac {

// Statistical check of the tabular-mean estimate of the conditional
// advantage: trajectories are sampled with a random snapshot opponent per
// episode, the exact per-history advantage A_{pi^j}(h,a) of each visited
// (s, a) pair is averaged (this is the closed-form l2 minimizer), and the
// mean is compared against the exact W(s,a) in standard-error units,
// conditioned on the pair having been visited at least once.
struct UnbiasednessReport {
  struct Entry {
    InfoStateKey key;
    Action action = 0;
    double w_hat = 0.0;
    double w_exact = 0.0;
    double stderr_of_mean = 0.0;
    uint64_t visits = 0;
    bool within_3se = false;
  };
  std::vector<Entry> entries;  // visited pairs only
  uint64_t visited_pairs = 0;
  double fraction_within_3se = 0.0;
};

UnbiasednessReport unbiasedness_harness(const Game& game, const GameTree& tree,
                                        const SnapshotSequence& snapshots,
                                        PlayerId player, int num_trajectories,
                                        const BehaviorFn& exploratory, Rng& rng);

}  // namespace armac
