#include "armac/games/goofspiel.h"

namespace armac {

namespace {
constexpr int kNumCards = 5;

// observation layout: own bids (5 turns x 5) + trick outcomes (5 turns x 3)
const GameDescriptor kGoofspielDescriptor{
    GameId::kGoofspiel5, "goofspiel5",
    /*num_players=*/2,
    /*max_actions=*/5,
    /*max_episode_length=*/10,
    /*observation_bits=*/25 + 15,
    /*zero_sum=*/true};
}  // namespace

const GameDescriptor& GoofspielGame::descriptor() const {
  return kGoofspielDescriptor;
}

std::unique_ptr<State> GoofspielGame::new_initial_state() const {
  return std::make_unique<GoofspielState>();
}

GoofspielState::GoofspielState() : State(2) {
  current_player_ = 0;  // no chance: the point order is fixed
  for (int p = 0; p < 2; ++p) {
    for (int c = 0; c < kNumCards; ++c) hand_[p][c] = true;
  }
}

std::unique_ptr<State> GoofspielState::clone() const {
  return std::make_unique<GoofspielState>(*this);
}

const GameDescriptor& GoofspielState::descriptor() const {
  return kGoofspielDescriptor;
}

std::vector<Action> GoofspielState::legal_actions() const {
  ARMAC_CHECK_MSG(!is_terminal() && !is_chance(),
                  "legal_actions at non-decision state");
  std::vector<Action> legal;
  const int p = pending_bid_ < 0 ? 0 : 1;
  for (int c = 0; c < kNumCards; ++c) {
    if (hand_[p][c]) legal.push_back(c);
  }
  return legal;
}

std::vector<std::pair<Action, double>> GoofspielState::chance_outcomes()
    const {
  ARMAC_CHECK_MSG(false, "goofspiel has no chance nodes");
  return {};
}

void GoofspielState::do_apply(Action a) {
  if (pending_bid_ < 0) {
    pending_bid_ = a;
    current_player_ = 1;
    return;
  }

  // Resolve the trick. Point cards descend: turn t is worth 5 - t.
  const int bid0 = pending_bid_;
  const int bid1 = a;
  const int value = kNumCards - turn_;
  if (bid0 > bid1) {
    points_[0] += value;
    win_history_.push_back(0);
  } else if (bid1 > bid0) {
    points_[1] += value;
    win_history_.push_back(1);
  } else {
    win_history_.push_back(2);  // tie: the point card is discarded
  }
  hand_[0][bid0] = false;
  hand_[1][bid1] = false;
  bid_history_[0].push_back(bid0);
  bid_history_[1].push_back(bid1);
  pending_bid_ = -1;
  ++turn_;

  if (turn_ == kNumCards) {
    current_player_ = kTerminalPlayer;
    if (points_[0] != points_[1]) {
      const PlayerId winner = points_[0] > points_[1] ? 0 : 1;
      returns_[winner] = 1.0;
      returns_[1 - winner] = -1.0;
    }
    return;
  }
  current_player_ = 0;
}

void GoofspielState::write_observation_bits(PlayerId player,
                                            std::vector<uint8_t>& bits) const {
  bits.assign(kGoofspielDescriptor.observation_bits, 0);
  for (size_t t = 0; t < bid_history_[player].size(); ++t) {
    bits[5 * t + bid_history_[player][t]] = 1;
  }
  // Player 0 sees their own pending bid before the trick resolves.
  if (player == 0 && pending_bid_ >= 0) {
    bits[5 * bid_history_[0].size() + pending_bid_] = 1;
  }
  for (size_t t = 0; t < win_history_.size(); ++t) {
    bits[25 + 3 * t + win_history_[t]] = 1;
  }
}

}  // namespace armac
