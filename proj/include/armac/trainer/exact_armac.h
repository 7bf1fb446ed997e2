#pragma once

#include "armac/solvers/tree_values.h"

namespace armac {

// Exact-enumeration mode of the trainer, for Lemma-level verification.
// Every epoch walks the full tree under the current joint policy pi^t,
// accumulates for both players the per-history opponent-reach-weighted
// advantages (the numerator of the conditional advantage W) and the
// opponent reach mass (its denominator), then derives pi^{t+1} by regret
// matching over W. The average policy uses the exact reach-weighted
// accumulator, as tabular CFR does.
//
// The W aggregation runs per history, a deliberately different route from
// CfrSolver's per-info-state counterfactual regrets; agreement between the
// two policy sequences is the executable form of the regret/advantage
// equivalence.
class ExactArmacTrainer {
 public:
  explicit ExactArmacTrainer(const GameTree& tree);

  void epoch();
  void run(int epochs);
  int epochs_done() const { return epochs_done_; }

  const LocalPolicy& current_local() const { return policy_; }
  PolicyTable current_policy() const { return tree_.local_to_table(policy_); }

  LocalPolicy average_local() const;
  PolicyTable average_policy() const;

  // Mean-regret table W(s,a) = numerator / cumulative opponent reach;
  // zeros where that reach is still zero.
  const std::vector<std::vector<double>>& w_table() const { return w_; }
  const std::vector<double>& cumulative_opponent_reach() const {
    return denom_;
  }

 private:
  const GameTree& tree_;
  LocalPolicy policy_;                       // pi^t
  std::vector<std::vector<double>> numer_;   // per info state
  std::vector<double> denom_;
  std::vector<std::vector<double>> w_;
  std::vector<std::vector<double>> average_;
  int epochs_done_ = 0;
};

}  // namespace armac
