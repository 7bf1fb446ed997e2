#pragma once

#include <vector>

#include "armac/solvers/game_tree.h"

namespace armac {

// Local policy form used by all exact solvers: one distribution per
// interned information state, aligned with that state's legal actions.
using LocalPolicy = std::vector<ActionDistribution>;

// Per-history reach probabilities under a joint policy. Chance is kept as
// its own factor and folded into every player's opponent reach.
struct ReachReport {
  int num_players = 0;
  std::vector<double> own;     // [node * num_players + p]
  std::vector<double> chance;  // [node]

  double own_reach(int node, PlayerId p) const {
    return own[node * num_players + p];
  }
  double opponent_reach(int node, PlayerId p) const {
    double r = chance[node];
    for (int q = 0; q < num_players; ++q) {
      if (q != p) r *= own[node * num_players + q];
    }
    return r;
  }
  double joint_reach(int node) const {
    double r = chance[node];
    for (int q = 0; q < num_players; ++q) r *= own[node * num_players + q];
    return r;
  }
};

// Per-history expected values v_{pi,p}(h) for every player.
struct ValueReport {
  int num_players = 0;
  std::vector<double> values;  // [node * num_players + p]

  double value(int node, PlayerId p) const {
    return values[node * num_players + p];
  }
  std::vector<double> game_value() const {
    return {values.begin(), values.begin() + num_players};
  }
};

// Counterfactual values for one player: q^c(s,a), v^c(s) and the opponent
// reach mass beta(s) = sum_h eta_{-i}(h), per interned info state. Entries
// for states of other players are left empty.
struct CFValueReport {
  PlayerId player = 0;
  std::vector<std::vector<double>> q_c;  // [info][legal position]
  std::vector<double> v_c;               // [info]
  std::vector<double> beta;              // [info]
};

ReachReport reach_probabilities(const GameTree& tree,
                                const LocalPolicy& policy);

ValueReport expected_values(const GameTree& tree, const LocalPolicy& policy);

CFValueReport counterfactual_values(const GameTree& tree,
                                    const LocalPolicy& policy,
                                    PlayerId player);

}  // namespace armac
