#pragma once

#include "armac/games/game.h"

namespace armac {

// Liar's Dice, 1 die versus 1 die, 6 faces. Bids are (count, face) pairs
// ordered lexicographically: action id = (count-1)*6 + (face-1) for count
// in {1,2}; the challenge action (id 12) is last and only legal once a bid
// exists. The highest face is wild: it counts toward every bid face. The
// challenger wins exactly when the bid is not satisfied.
class LiarsDiceGame : public Game {
 public:
  const GameDescriptor& descriptor() const override;
  std::unique_ptr<State> new_initial_state() const override;
};

class LiarsDiceState : public State {
 public:
  LiarsDiceState();
  std::unique_ptr<State> clone() const override;
  std::vector<Action> legal_actions() const override;
  std::vector<std::pair<Action, double>> chance_outcomes() const override;
  void write_observation_bits(PlayerId player,
                              std::vector<uint8_t>& bits) const override;
  const GameDescriptor& descriptor() const override;

 protected:
  void do_apply(Action a) override;

 private:
  int dice_[2] = {-1, -1};  // face 0..5 once rolled
  std::vector<Action> bids_;
};

}  // namespace armac
