#pragma once

#include "armac/games/game.h"

namespace armac {

// Single-agent 6x6 exploration gridworld: start at (0,0), terminal reward
// +1 at (2,0) and +2 at (5,5), per-step reward 0, walls clip movement,
// 50-step cap. Histories are aggregated by the Markov state (the current
// cell), matching the single-agent convention of treating the grid as an
// MDP rather than a tree of paths.
class GridworldGame : public Game {
 public:
  const GameDescriptor& descriptor() const override;
  std::unique_ptr<State> new_initial_state() const override;
};

class GridworldState : public State {
 public:
  static constexpr int kSize = 6;
  static constexpr int kStepLimit = 50;

  GridworldState();
  std::unique_ptr<State> clone() const override;
  std::vector<Action> legal_actions() const override;
  std::vector<std::pair<Action, double>> chance_outcomes() const override;
  void write_observation_bits(PlayerId player,
                              std::vector<uint8_t>& bits) const override;
  const GameDescriptor& descriptor() const override;

  int x() const { return x_; }
  int y() const { return y_; }

 protected:
  void do_apply(Action a) override;

 private:
  int x_ = 0;
  int y_ = 0;
  int steps_ = 0;
};

}  // namespace armac
