#pragma once

#include <functional>

#include "armac/games/game.h"
#include "armac/solvers/policy.h"
#include "armac/util/rng.h"

namespace armac {

// Joint behavior: maps a decision state to a distribution over its legal
// actions (positional). The acting seat is state.current_player().
using BehaviorFn = std::function<ActionDistribution(const State&)>;

struct TrajectoryStep {
  PlayerId player;      // kChancePlayer for chance transitions
  Action action;        // raw action id
  double prob;          // behavior probability (chance probability at chance)
  // Decision steps only:
  InfoStateKey info_key;
  HistoryKey history_key;
  std::vector<Action> legal;
  ActionDistribution distribution;  // the behavior distribution used
  int action_pos = -1;              // position of `action` within legal
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::vector<double> returns;
  bool truncated = false;
  HistoryKey final_history_key;  // state the episode ended in
  // Truncated episodes only: where a critic bootstrap would resume. The
  // legal set is taken from the last decision step (step-capped games here
  // have a state-independent action set).
  InfoStateKey final_info_key;
  std::vector<Action> final_legal;
  uint64_t seed_id = 0;
};

// Plays one episode under `behavior`. Chance is rolled internally by
// sampling the state's outcome distribution; the caller never needs the
// chance model. Behavior distributions must be valid; sampled actions
// always carry positive probability.
Trajectory sample_episode(const Game& game, const BehaviorFn& behavior,
                          Rng& rng, uint64_t seed_id = 0);

// Behavior backed by a tabular policy, with uniform fallback for states
// the table has never seen.
BehaviorFn table_behavior(const PolicyTable& table);

// Per-seat composition: seat i plays `learner`, everyone else `opponent`.
BehaviorFn split_behavior(PlayerId learner, BehaviorFn learner_behavior,
                          BehaviorFn opponent_behavior);

}  // namespace armac
