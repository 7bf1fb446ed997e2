#pragma once

#include "armac/games/game.h"

namespace armac {

// Imperfect-information Goofspiel with 5 bid cards per player and point
// cards revealed in descending order (5,4,3,2,1). The simultaneous bids are
// serialized as two consecutive hidden moves; players observe only who won
// each trick, never the opponent's card. A tied trick discards the point
// card. Terminal returns are win/loss/draw (+1/-1/0) on total points.
class GoofspielGame : public Game {
 public:
  const GameDescriptor& descriptor() const override;
  std::unique_ptr<State> new_initial_state() const override;
};

class GoofspielState : public State {
 public:
  GoofspielState();
  std::unique_ptr<State> clone() const override;
  std::vector<Action> legal_actions() const override;
  std::vector<std::pair<Action, double>> chance_outcomes() const override;
  void write_observation_bits(PlayerId player,
                              std::vector<uint8_t>& bits) const override;
  const GameDescriptor& descriptor() const override;

 protected:
  void do_apply(Action a) override;

 private:
  int turn_ = 0;
  int pending_bid_ = -1;  // player 0's hidden bid within the current turn
  bool hand_[2][5];
  int points_[2] = {0, 0};
  std::vector<int> bid_history_[2];   // per player, by turn
  std::vector<int> win_history_;      // 0, 1, or 2 for a tie
};

}  // namespace armac
