#pragma once

#include "armac/solvers/tree_values.h"

namespace armac {

// Vanilla counterfactual regret minimization with simultaneous updates:
// every iteration walks the full tree once under pi^t = NormalizedReLU of
// the cumulative regrets, adds the exact immediate counterfactual regrets
// for both players, and accumulates the reach-weighted current policy into
// the average. pi^1 is uniform everywhere.
class CfrSolver {
 public:
  explicit CfrSolver(const GameTree& tree);

  void iterate();
  void run(int iterations);
  int iterations_done() const { return iterations_done_; }

  // pi^{t+1}: regret matching over the current cumulative regrets.
  LocalPolicy current_local() const;
  PolicyTable current_policy() const;

  LocalPolicy average_local() const;
  PolicyTable average_policy() const;

  const std::vector<std::vector<double>>& regrets() const { return regrets_; }
  const std::vector<std::vector<double>>& average_accumulator() const {
    return average_;
  }

 private:
  std::array<double, 2> walk(int node, double own0, double own1,
                             double chance, const LocalPolicy& policy);

  const GameTree& tree_;
  std::vector<std::vector<double>> regrets_;   // per info state
  std::vector<std::vector<double>> average_;   // reach-weighted policy sums
  int iterations_done_ = 0;
};

}  // namespace armac
