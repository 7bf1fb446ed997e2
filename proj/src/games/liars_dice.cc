#include "armac/games/liars_dice.h"

namespace armac {

namespace {
constexpr int kNumFaces = 6;
constexpr int kNumBids = 12;        // counts {1,2} x faces {1..6}
constexpr Action kChallenge = 12;

const GameDescriptor kLiarsDiceDescriptor{
    GameId::kLiarsDice, "liars_dice",
    /*num_players=*/2,
    /*max_actions=*/13,
    /*max_episode_length=*/15,  // 2 rolls + up to 12 bids + challenge
    /*observation_bits=*/6 + 12,
    /*zero_sum=*/true};
}  // namespace

const GameDescriptor& LiarsDiceGame::descriptor() const {
  return kLiarsDiceDescriptor;
}

std::unique_ptr<State> LiarsDiceGame::new_initial_state() const {
  return std::make_unique<LiarsDiceState>();
}

LiarsDiceState::LiarsDiceState() : State(2) {
  current_player_ = kChancePlayer;
}

std::unique_ptr<State> LiarsDiceState::clone() const {
  return std::make_unique<LiarsDiceState>(*this);
}

const GameDescriptor& LiarsDiceState::descriptor() const {
  return kLiarsDiceDescriptor;
}

std::vector<Action> LiarsDiceState::legal_actions() const {
  ARMAC_CHECK_MSG(!is_terminal() && !is_chance(),
                  "legal_actions at non-decision state");
  std::vector<Action> legal;
  const Action last = bids_.empty() ? -1 : bids_.back();
  for (Action b = last + 1; b < kNumBids; ++b) legal.push_back(b);
  if (!bids_.empty()) legal.push_back(kChallenge);
  return legal;
}

std::vector<std::pair<Action, double>> LiarsDiceState::chance_outcomes()
    const {
  ARMAC_CHECK_MSG(is_chance(), "chance_outcomes on non-chance state");
  std::vector<std::pair<Action, double>> outcomes;
  outcomes.reserve(kNumFaces);
  for (int f = 0; f < kNumFaces; ++f) {
    outcomes.emplace_back(f, 1.0 / kNumFaces);
  }
  return outcomes;
}

void LiarsDiceState::do_apply(Action a) {
  if (is_chance()) {
    if (dice_[0] < 0) {
      dice_[0] = a;
    } else {
      dice_[1] = a;
      current_player_ = 0;
    }
    return;
  }

  if (a != kChallenge) {
    bids_.push_back(a);
    current_player_ = 1 - current_player_;
    return;
  }

  // Challenge: resolve the last bid. The wild face matches everything.
  const PlayerId challenger = current_player_;
  const PlayerId bidder = 1 - challenger;
  const int count = bids_.back() / kNumFaces + 1;
  const int face = bids_.back() % kNumFaces;
  int matching = 0;
  for (int p = 0; p < 2; ++p) {
    if (dice_[p] == face || dice_[p] == kNumFaces - 1) ++matching;
  }
  const PlayerId winner = matching >= count ? bidder : challenger;
  current_player_ = kTerminalPlayer;
  returns_[winner] = 1.0;
  returns_[1 - winner] = -1.0;
}

void LiarsDiceState::write_observation_bits(PlayerId player,
                                            std::vector<uint8_t>& bits) const {
  bits.assign(kLiarsDiceDescriptor.observation_bits, 0);
  if (dice_[player] >= 0) bits[dice_[player]] = 1;
  // Bids strictly increase and alternate, so the set determines the
  // sequence.
  for (Action b : bids_) bits[6 + b] = 1;
}

}  // namespace armac
