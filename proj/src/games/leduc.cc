#include "armac/games/leduc.h"

namespace armac {

namespace {
constexpr Action kFold = 0;
constexpr Action kCall = 1;
constexpr Action kRaise = 2;
constexpr int kDeckSize = 6;
constexpr int kMaxRaises = 2;

int rank_of(int card) { return card / 2; }

// observation layout: hole (6) + board (6) + 2 rounds x 4 slots x 2 bits
const GameDescriptor kLeducDescriptor{
    GameId::kLeduc, "leduc",
    /*num_players=*/2,
    /*max_actions=*/6,  // card deals use action ids 0..5
    /*max_episode_length=*/12,
    /*observation_bits=*/6 + 6 + 16,
    /*zero_sum=*/true};
}  // namespace

const GameDescriptor& LeducGame::descriptor() const {
  return kLeducDescriptor;
}

std::unique_ptr<State> LeducGame::new_initial_state() const {
  return std::make_unique<LeducState>();
}

LeducState::LeducState() : State(2) { current_player_ = kChancePlayer; }

std::unique_ptr<State> LeducState::clone() const {
  return std::make_unique<LeducState>(*this);
}

const GameDescriptor& LeducState::descriptor() const {
  return kLeducDescriptor;
}

std::vector<Action> LeducState::legal_actions() const {
  ARMAC_CHECK_MSG(!is_terminal() && !is_chance(),
                  "legal_actions at non-decision state");
  std::vector<Action> legal;
  if (stakes_ > spent_[current_player_]) legal.push_back(kFold);
  legal.push_back(kCall);
  if (raises_this_round_ < kMaxRaises) legal.push_back(kRaise);
  return legal;
}

std::vector<std::pair<Action, double>> LeducState::chance_outcomes() const {
  ARMAC_CHECK_MSG(is_chance(), "chance_outcomes on non-chance state");
  int undealt = kDeckSize;
  for (int c : {hole_[0], hole_[1], board_}) {
    if (c >= 0) --undealt;
  }
  std::vector<std::pair<Action, double>> outcomes;
  for (int c = 0; c < kDeckSize; ++c) {
    if (!card_dealt(c)) outcomes.emplace_back(c, 1.0 / undealt);
  }
  return outcomes;
}

void LeducState::do_apply(Action a) {
  if (is_chance()) {
    if (hole_[0] < 0) {
      hole_[0] = a;
    } else if (hole_[1] < 0) {
      hole_[1] = a;
      round_ = 1;
      current_player_ = 0;
    } else {
      board_ = a;
      round_ = 2;
      raises_this_round_ = 0;
      current_player_ = 0;
    }
    return;
  }

  const PlayerId p = current_player_;
  round_actions_[round_ - 1].push_back(a);
  if (a == kFold) {
    current_player_ = kTerminalPlayer;
    const PlayerId winner = 1 - p;
    returns_[winner] = spent_[p];
    returns_[p] = -spent_[p];
    return;
  }
  if (a == kCall) {
    spent_[p] = stakes_;
    // A call ends the round unless it is the round's opening action.
    if (round_actions_[round_ - 1].size() >= 2) {
      finish_round();
    } else {
      current_player_ = 1 - p;
    }
    return;
  }
  // Raise: match the current stakes, then add the round's raise size.
  const double raise_size = round_ == 1 ? 2.0 : 4.0;
  stakes_ += raise_size;
  spent_[p] = stakes_;
  ++raises_this_round_;
  current_player_ = 1 - p;
}

void LeducState::finish_round() {
  if (round_ == 1) {
    current_player_ = kChancePlayer;  // deal the board card
  } else {
    resolve_showdown();
  }
}

void LeducState::resolve_showdown() {
  current_player_ = kTerminalPlayer;
  const int board_rank = rank_of(board_);
  int score[2];
  for (int p = 0; p < 2; ++p) {
    const int r = rank_of(hole_[p]);
    score[p] = r == board_rank ? 100 + r : r;  // pairing the board wins
  }
  if (score[0] == score[1]) return;  // split pot, equal contributions
  const PlayerId winner = score[0] > score[1] ? 0 : 1;
  returns_[winner] = spent_[1 - winner];
  returns_[1 - winner] = -spent_[1 - winner];
}

void LeducState::write_observation_bits(PlayerId player,
                                        std::vector<uint8_t>& bits) const {
  bits.assign(kLeducDescriptor.observation_bits, 0);
  if (hole_[player] >= 0) bits[hole_[player]] = 1;
  if (board_ >= 0) bits[6 + board_] = 1;
  for (int r = 0; r < 2; ++r) {
    for (size_t i = 0; i < round_actions_[r].size() && i < 4; ++i) {
      // 2 bits per slot: call=first, raise=second (folds end the game).
      const int base = 12 + r * 8 + static_cast<int>(i) * 2;
      bits[base + (round_actions_[r][i] == kRaise ? 1 : 0)] = 1;
    }
  }
}

}  // namespace armac
