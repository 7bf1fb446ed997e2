#include "armac/sampling/trajectory.h"

namespace armac {

Trajectory sample_episode(const Game& game, const BehaviorFn& behavior,
                          Rng& rng, uint64_t seed_id) {
  Trajectory traj;
  traj.seed_id = seed_id;
  auto state = game.new_initial_state();
  const int max_len = game.descriptor().max_episode_length + 2;

  int moves = 0;
  while (!state->is_terminal()) {
    ARMAC_CHECK_MSG(++moves <= max_len, "episode exceeded max length");
    TrajectoryStep step;
    if (state->is_chance()) {
      const auto outcomes = state->chance_outcomes();
      std::vector<double> probs;
      probs.reserve(outcomes.size());
      for (const auto& [a, p] : outcomes) probs.push_back(p);
      const int k = rng.next_weighted(probs);
      step.player = kChancePlayer;
      step.action = outcomes[k].first;
      step.prob = outcomes[k].second;
    } else {
      const PlayerId p = state->current_player();
      step.player = p;
      step.legal = state->legal_actions();
      step.distribution = behavior(*state);
      ARMAC_CHECK_MSG(step.distribution.size() == step.legal.size(),
                      "behavior width mismatch");
      step.action_pos = rng.next_weighted(step.distribution);
      step.action = step.legal[step.action_pos];
      step.prob = step.distribution[step.action_pos];
      step.info_key = state->info_state_key(p);
      step.history_key = state->history_key();
    }
    state->apply_action(step.action);
    traj.steps.push_back(std::move(step));
  }
  traj.returns = state->returns();
  traj.truncated = state->is_truncated();
  traj.final_history_key = state->history_key();
  if (traj.truncated && !traj.steps.empty()) {
    traj.final_info_key = state->info_state_key(traj.steps.back().player);
    traj.final_legal = traj.steps.back().legal;
  }
  return traj;
}

BehaviorFn table_behavior(const PolicyTable& table) {
  return [&table](const State& state) {
    const PlayerId p = state.current_player();
    return table.get(state.info_state_key(p),
                     static_cast<int>(state.legal_actions().size()));
  };
}

BehaviorFn split_behavior(PlayerId learner, BehaviorFn learner_behavior,
                          BehaviorFn opponent_behavior) {
  return [learner, lb = std::move(learner_behavior),
          ob = std::move(opponent_behavior)](const State& state) {
    return state.current_player() == learner ? lb(state) : ob(state);
  };
}

}  // namespace armac
