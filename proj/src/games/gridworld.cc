#include "armac/games/gridworld.h"

#include <algorithm>

namespace armac {

namespace {
// actions: 0=N (+y), 1=S (-y), 2=E (+x), 3=W (-x)
constexpr int kDx[4] = {0, 0, 1, -1};
constexpr int kDy[4] = {1, -1, 0, 0};

const GameDescriptor kGridworldDescriptor{
    GameId::kGridworld, "gridworld",
    /*num_players=*/1,
    /*max_actions=*/4,
    /*max_episode_length=*/GridworldState::kStepLimit,
    /*observation_bits=*/36,  // cell one-hot
    /*zero_sum=*/false};
}  // namespace

const GameDescriptor& GridworldGame::descriptor() const {
  return kGridworldDescriptor;
}

std::unique_ptr<State> GridworldGame::new_initial_state() const {
  return std::make_unique<GridworldState>();
}

GridworldState::GridworldState() : State(1) { current_player_ = 0; }

std::unique_ptr<State> GridworldState::clone() const {
  return std::make_unique<GridworldState>(*this);
}

const GameDescriptor& GridworldState::descriptor() const {
  return kGridworldDescriptor;
}

std::vector<Action> GridworldState::legal_actions() const {
  ARMAC_CHECK_MSG(!is_terminal(), "legal_actions at terminal state");
  return {0, 1, 2, 3};
}

std::vector<std::pair<Action, double>> GridworldState::chance_outcomes()
    const {
  ARMAC_CHECK_MSG(false, "gridworld has no chance nodes");
  return {};
}

void GridworldState::do_apply(Action a) {
  x_ = std::min(kSize - 1, std::max(0, x_ + kDx[a]));
  y_ = std::min(kSize - 1, std::max(0, y_ + kDy[a]));
  ++steps_;
  if (x_ == 2 && y_ == 0) {
    current_player_ = kTerminalPlayer;
    returns_[0] = 1.0;
  } else if (x_ == 5 && y_ == 5) {
    current_player_ = kTerminalPlayer;
    returns_[0] = 2.0;
  } else if (steps_ >= kStepLimit) {
    current_player_ = kTerminalPlayer;
    truncated_ = true;  // step cap: terminal with return 0
  }
}

void GridworldState::write_observation_bits(PlayerId player,
                                            std::vector<uint8_t>& bits) const {
  (void)player;
  bits.assign(kGridworldDescriptor.observation_bits, 0);
  bits[y_ * kSize + x_] = 1;
}

}  // namespace armac
