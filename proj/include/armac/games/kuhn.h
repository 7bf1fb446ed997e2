#pragma once

#include "armac/games/game.h"

namespace armac {

// Kuhn poker: 3-card deck {J=0, Q=1, K=2}, one private card each, ante 1,
// actions pass(0)/bet(1). Micro verification game; its full tree of 58
// histories keeps every oracle exhaustive.
class KuhnGame : public Game {
 public:
  const GameDescriptor& descriptor() const override;
  std::unique_ptr<State> new_initial_state() const override;
};

class KuhnState : public State {
 public:
  KuhnState();
  std::unique_ptr<State> clone() const override;
  std::vector<Action> legal_actions() const override;
  std::vector<std::pair<Action, double>> chance_outcomes() const override;
  void write_observation_bits(PlayerId player,
                              std::vector<uint8_t>& bits) const override;
  const GameDescriptor& descriptor() const override;

 protected:
  void do_apply(Action a) override;

 private:
  int cards_[2] = {-1, -1};
  std::vector<Action> betting_;
};

}  // namespace armac
