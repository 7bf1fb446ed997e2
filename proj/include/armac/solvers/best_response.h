#pragma once

#include "armac/solvers/tree_values.h"

namespace armac {

struct BestResponseResult {
  double value = 0.0;       // expected return of the best responder
  PolicyTable policy;       // deterministic; ties break to the lowest action
};

// Exact best response for `player` against the other seat's policy.
BestResponseResult best_response(const GameTree& tree,
                                 const LocalPolicy& policy, PlayerId player);

struct NashConvReport {
  double nash_conv = 0.0;
  std::vector<double> br_values;      // per player
  std::vector<double> policy_values;  // per player, under the joint policy
};

NashConvReport nash_conv_report(const GameTree& tree,
                                const LocalPolicy& policy);

double nash_conv(const GameTree& tree, const LocalPolicy& policy);
double nash_conv(const GameTree& tree, const PolicyTable& policy);

}  // namespace armac
