#pragma once

#include "armac/games/game.h"

namespace armac {

// Leduc poker: 6-card deck (3 ranks x 2 suits), ante 1, two betting rounds
// with fixed raise sizes 2 then 4 and at most two raises per round; one
// public board card between rounds. Fold is legal only when facing a raise.
class LeducGame : public Game {
 public:
  const GameDescriptor& descriptor() const override;
  std::unique_ptr<State> new_initial_state() const override;
};

class LeducState : public State {
 public:
  LeducState();
  std::unique_ptr<State> clone() const override;
  std::vector<Action> legal_actions() const override;
  std::vector<std::pair<Action, double>> chance_outcomes() const override;
  void write_observation_bits(PlayerId player,
                              std::vector<uint8_t>& bits) const override;
  const GameDescriptor& descriptor() const override;

 protected:
  void do_apply(Action a) override;

 private:
  bool card_dealt(int card) const {
    return card == hole_[0] || card == hole_[1] || card == board_;
  }
  void finish_round();
  void resolve_showdown();

  int hole_[2] = {-1, -1};
  int board_ = -1;
  int round_ = 0;               // 0 while dealing, then 1 or 2
  int raises_this_round_ = 0;
  double spent_[2] = {1.0, 1.0};  // antes
  double stakes_ = 1.0;           // per-player level to match
  std::vector<Action> round_actions_[2];  // per round, for observations
};

}  // namespace armac
