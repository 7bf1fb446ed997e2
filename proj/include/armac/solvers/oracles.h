#pragma once

#include "armac/solvers/tree_values.h"

namespace armac {

// Exact conditional advantage W^T(s,a) over a sequence of policy snapshots
// pi^1..pi^T:
//
//   W^T(s,a) = sum_j sum_{h in s} eta_{-i}^{pi^j}(h) * A_{pi^j,i}(h,a)
//              --------------------------------------------------------
//                          sum_j eta_{-i}^{pi^j}(s)
//
// with A_{pi,i}(h,a) = q_{pi,i}(h,a) - v_{pi,i}(h). States whose cumulative
// opponent reach w(s) is zero carry no W values (marked empty).
struct WOracleReport {
  PlayerId player = 0;
  std::vector<double> w;                       // [info]: cumulative opp reach
  std::vector<std::vector<double>> w_values;   // [info][legal]; empty if w==0
};

using SnapshotSequence = std::vector<LocalPolicy>;

WOracleReport exact_w_oracle(const GameTree& tree,
                             const SnapshotSequence& snapshots,
                             PlayerId player);

// Exact cumulative counterfactual regret R^T(s,a) = sum_j q^c - v^c over
// the same snapshots. Deliberately aggregated per information state, not
// per history, so it is an independent route from the W oracle.
std::vector<std::vector<double>> cumulative_regret_oracle(
    const GameTree& tree, const SnapshotSequence& snapshots, PlayerId player);

}  // namespace armac
