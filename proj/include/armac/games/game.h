#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "armac/util/check.h"

namespace armac {

using Action = int;
using PlayerId = int;

inline constexpr PlayerId kChancePlayer = -1;
inline constexpr PlayerId kTerminalPlayer = -2;

enum class GameId { kKuhn, kLeduc, kLiarsDice, kGoofspiel5, kGridworld };

struct GameDescriptor {
  GameId id;
  std::string name;
  int num_players = 2;
  int max_actions = 2;        // action ids are always < max_actions
  int max_episode_length = 0; // bound on decision+chance moves per playout
  int observation_bits = 0;   // fixed per-player observation width
  bool zero_sum = true;
};

// Canonical key for one player's action-observation sequence. `bytes` is
// the player's observation bit vector packed little-endian (bit i of the
// layout is bit i%8 of byte i/8), prefixed by one player byte so keys of
// different seats never collide.
struct InfoStateKey {
  PlayerId player = 0;
  std::string bytes;

  bool operator==(const InfoStateKey& o) const {
    return player == o.player && bytes == o.bytes;
  }
  bool operator<(const InfoStateKey& o) const {
    if (player != o.player) return player < o.player;
    return bytes < o.bytes;
  }
};

// Augmented information state: the packed concatenation of every player's
// observation bits. Identifies a world state up to differences nobody has
// observed yet.
using HistoryKey = std::string;

std::string pack_bits(const std::vector<uint8_t>& bits);
std::vector<uint8_t> unpack_bits(const std::string& bytes, int num_bits);
std::string hex_encode(const std::string& bytes);
std::string hex_decode(const std::string& hex);

class State {
 public:
  explicit State(int num_players) : returns_(num_players, 0.0) {}
  virtual ~State() = default;

  virtual std::unique_ptr<State> clone() const = 0;

  PlayerId current_player() const { return current_player_; }
  bool is_terminal() const { return current_player_ == kTerminalPlayer; }
  bool is_chance() const { return current_player_ == kChancePlayer; }

  // Legal actions in ascending action-id order; non-empty at any
  // non-terminal state.
  virtual std::vector<Action> legal_actions() const = 0;

  // Chance outcomes with probabilities summing to 1. Only exact oracles may
  // call this; the sampled trainers go through sample_chance instead so the
  // learning side never touches the chance model.
  virtual std::vector<std::pair<Action, double>> chance_outcomes() const = 0;

  // Mutating transition. `a` must be legal (or a chance outcome at chance
  // nodes). Appends to history and advances the current player.
  void apply_action(Action a);

  std::unique_ptr<State> child(Action a) const {
    auto c = clone();
    c->apply_action(a);
    return c;
  }

  // Per-player terminal utilities. Valid only at terminal states.
  const std::vector<double>& returns() const {
    ARMAC_CHECK_MSG(is_terminal(), "returns() on non-terminal state");
    return returns_;
  }

  // Fills `bits` (resized to descriptor().observation_bits) with player p's
  // view of the game. Layouts are documented in docs/observations.md.
  virtual void write_observation_bits(PlayerId player,
                                      std::vector<uint8_t>& bits) const = 0;

  InfoStateKey info_state_key(PlayerId player) const;
  HistoryKey history_key() const;

  const std::vector<std::pair<PlayerId, Action>>& history() const {
    return history_;
  }

  // True when the episode hit the step cap rather than a real terminal.
  bool is_truncated() const { return truncated_; }

  virtual const GameDescriptor& descriptor() const = 0;

 protected:
  // Game-specific transition; called by apply_action after legality checks.
  virtual void do_apply(Action a) = 0;

  PlayerId current_player_ = kChancePlayer;
  std::vector<double> returns_;
  bool truncated_ = false;

 private:
  std::vector<std::pair<PlayerId, Action>> history_;
};

class Game {
 public:
  virtual ~Game() = default;
  virtual const GameDescriptor& descriptor() const = 0;
  virtual std::unique_ptr<State> new_initial_state() const = 0;
};

// Feature vectors for the function approximators: the player's observation
// bits as 0/1 reals, prefixed by a seat one-hot.
std::vector<double> info_features(const State& state, PlayerId player);
// Concatenation of all players' observation bits (no seat prefix); the
// critic input.
std::vector<double> history_features(const State& state);

int info_feature_width(const GameDescriptor& d);
int history_feature_width(const GameDescriptor& d);

// Rebuilds feature vectors from stored keys (keys are the packed bits).
std::vector<double> info_features_from_key(const InfoStateKey& key,
                                           const GameDescriptor& d);
std::vector<double> history_features_from_key(const HistoryKey& key,
                                              const GameDescriptor& d);

}  // namespace armac

namespace std {
template <>
struct hash<armac::InfoStateKey> {
  size_t operator()(const armac::InfoStateKey& k) const {
    return hash<string>()(k.bytes) * 1000003u + static_cast<size_t>(k.player);
  }
};
}  // namespace std
