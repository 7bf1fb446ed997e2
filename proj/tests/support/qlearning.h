#pragma once

#include "armac/games/gridworld.h"
#include "armac/util/rng.h"

namespace armac::testing {

// Reference agent for the exploration comparison: tabular Q-learning with
// a small epsilon-greedy policy, random tie-breaking among maximal Q
// values. Returns the index of the first episode that reached the +2 cell,
// or -1 within the budget.
inline int64_t qlearning_first_plus2(const Game& game, int max_episodes,
                                     double epsilon, double alpha,
                                     uint64_t seed) {
  constexpr int kCells = 36;
  constexpr int kActions = 4;
  std::vector<double> q(kCells * kActions, 0.0);
  Rng rng(seed);

  for (int episode = 0; episode < max_episodes; ++episode) {
    auto state = game.new_initial_state();
    while (!state->is_terminal()) {
      const auto* gw = dynamic_cast<const GridworldState*>(state.get());
      const int cell = gw->y() * 6 + gw->x();
      int action;
      if (rng.next_double() < epsilon) {
        action = static_cast<int>(rng.next_index(kActions));
      } else {
        double best = -1e18;
        std::vector<int> argmax;
        for (int a = 0; a < kActions; ++a) {
          const double v = q[cell * kActions + a];
          if (v > best + 1e-12) {
            best = v;
            argmax = {a};
          } else if (v > best - 1e-12) {
            argmax.push_back(a);
          }
        }
        action = argmax[rng.next_index(argmax.size())];
      }
      state->apply_action(action);
      const auto* next = dynamic_cast<const GridworldState*>(state.get());
      const int next_cell = next->y() * 6 + next->x();
      double target;
      if (state->is_terminal()) {
        target = state->returns()[0];
      } else {
        double best_next = -1e18;
        for (int a = 0; a < kActions; ++a) {
          best_next = std::max(best_next, q[next_cell * kActions + a]);
        }
        target = best_next;  // undiscounted, zero step reward
      }
      double& cell_q = q[cell * kActions + action];
      cell_q += alpha * (target - cell_q);
    }
    if (state->returns()[0] == 2.0) return episode;
  }
  return -1;
}

}  // namespace armac::testing
