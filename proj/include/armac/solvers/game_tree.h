#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "armac/games/game.h"
#include "armac/solvers/policy.h"

namespace armac {

// Fully enumerated game tree with interned information states. All exact
// machinery (CFR, best response, counterfactual values, the W/R oracles)
// runs over this flat index instead of re-walking State objects.
class GameTree {
 public:
  struct Node {
    PlayerId player;       // kChancePlayer / kTerminalPlayer / seat
    Action action;         // action leading here from the parent
    double chance_prob;    // probability of that action if parent is chance
    int parent = -1;
    int info_state = -1;   // decision nodes only
    int first_child = -1;
    int num_children = 0;
    int returns_offset = -1;  // terminal nodes: index into returns_pool
    bool truncated = false;
  };

  struct InfoStateRecord {
    InfoStateKey key;
    PlayerId player;
    std::vector<Action> legal;
    std::vector<int> nodes;  // members, in discovery (depth-first) order
  };

  // Enumerates the whole game. Throws EnumerationCapError beyond node_cap.
  static GameTree build(const Game& game, uint64_t node_cap = 10'000'000);

  const GameDescriptor& descriptor() const { return descriptor_; }
  int num_players() const { return descriptor_.num_players; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_[id]; }
  int root() const { return 0; }
  int child(int id, int k) const { return nodes_[id].first_child + k; }

  const std::vector<InfoStateRecord>& info_states() const {
    return info_states_;
  }
  const InfoStateRecord& info_state(int id) const { return info_states_[id]; }
  int num_info_states() const { return static_cast<int>(info_states_.size()); }

  const double* returns_of(const Node& n) const {
    return &returns_pool_[n.returns_offset];
  }

  // -1 when the key names no information state of this tree.
  int info_state_id(const InfoStateKey& key) const;

  // Per-info-state distributions from a PolicyTable (uniform fallback).
  std::vector<ActionDistribution> table_to_local(const PolicyTable& t) const;
  PolicyTable local_to_table(
      const std::vector<ActionDistribution>& local) const;

 private:
  GameDescriptor descriptor_;
  std::vector<Node> nodes_;
  std::vector<double> returns_pool_;
  std::vector<InfoStateRecord> info_states_;
  std::map<InfoStateKey, int> info_state_ids_;
};

}  // namespace armac
