#include "armac/games/kuhn.h"

namespace armac {

namespace {
constexpr Action kPass = 0;
constexpr Action kBet = 1;

const GameDescriptor kKuhnDescriptor{
    GameId::kKuhn, "kuhn",
    /*num_players=*/2,
    /*max_actions=*/3,  // chance outcomes use action ids 0..2
    /*max_episode_length=*/5,
    /*observation_bits=*/9,  // card one-hot (3) + 3 betting slots x 2
    /*zero_sum=*/true};
}  // namespace

const GameDescriptor& KuhnGame::descriptor() const { return kKuhnDescriptor; }

std::unique_ptr<State> KuhnGame::new_initial_state() const {
  return std::make_unique<KuhnState>();
}

KuhnState::KuhnState() : State(2) { current_player_ = kChancePlayer; }

std::unique_ptr<State> KuhnState::clone() const {
  return std::make_unique<KuhnState>(*this);
}

const GameDescriptor& KuhnState::descriptor() const {
  return kKuhnDescriptor;
}

std::vector<Action> KuhnState::legal_actions() const {
  ARMAC_CHECK_MSG(!is_terminal() && !is_chance(),
                  "legal_actions at non-decision state");
  return {kPass, kBet};
}

std::vector<std::pair<Action, double>> KuhnState::chance_outcomes() const {
  ARMAC_CHECK_MSG(is_chance(), "chance_outcomes on non-chance state");
  std::vector<std::pair<Action, double>> outcomes;
  const int undealt = cards_[0] < 0 ? 3 : 2;
  for (int c = 0; c < 3; ++c) {
    if (c != cards_[0]) outcomes.emplace_back(c, 1.0 / undealt);
  }
  return outcomes;
}

void KuhnState::do_apply(Action a) {
  if (cards_[0] < 0) {
    cards_[0] = a;
    return;  // still chance: deal player 1
  }
  if (cards_[1] < 0) {
    cards_[1] = a;
    current_player_ = 0;
    return;
  }

  betting_.push_back(a);
  const auto& b = betting_;
  const bool done =
      (b.size() == 2 && !(b[0] == kPass && b[1] == kBet)) || b.size() == 3;
  if (!done) {
    current_player_ = static_cast<PlayerId>(b.size() % 2);
    return;
  }

  current_player_ = kTerminalPlayer;
  // Contributions: ante 1 each, +1 per bet/call.
  double spent[2] = {1.0, 1.0};
  PlayerId actor = 0;
  for (Action act : b) {
    if (act == kBet) spent[actor] += 1.0;
    actor = 1 - actor;
  }
  const bool folded = b.size() >= 2 && b[b.size() - 2] == kBet &&
                      b[b.size() - 1] == kPass;
  PlayerId winner;
  if (folded) {
    winner = b.size() == 2 ? 0 : 1;  // bettor takes the pot
  } else {
    winner = cards_[0] > cards_[1] ? 0 : 1;
  }
  returns_[winner] = spent[1 - winner];
  returns_[1 - winner] = -spent[1 - winner];
}

void KuhnState::write_observation_bits(PlayerId player,
                                       std::vector<uint8_t>& bits) const {
  bits.assign(kKuhnDescriptor.observation_bits, 0);
  if (cards_[player] >= 0) bits[cards_[player]] = 1;
  for (size_t i = 0; i < betting_.size() && i < 3; ++i) {
    bits[3 + 2 * i + betting_[i]] = 1;
  }
}

}  // namespace armac
