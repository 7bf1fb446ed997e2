#include "armac/solvers/cfr.h"

#include <array>

namespace armac {

CfrSolver::CfrSolver(const GameTree& tree) : tree_(tree) {
  ARMAC_CHECK_MSG(tree.num_players() == 2, "CFR expects a two-player game");
  regrets_.resize(tree.num_info_states());
  average_.resize(tree.num_info_states());
  for (int s = 0; s < tree.num_info_states(); ++s) {
    const size_t n = tree.info_state(s).legal.size();
    regrets_[s].assign(n, 0.0);
    average_[s].assign(n, 0.0);
  }
}

LocalPolicy CfrSolver::current_local() const {
  LocalPolicy policy(regrets_.size());
  for (size_t s = 0; s < regrets_.size(); ++s) {
    policy[s] = regret_matching(regrets_[s]);
  }
  return policy;
}

PolicyTable CfrSolver::current_policy() const {
  return tree_.local_to_table(current_local());
}

LocalPolicy CfrSolver::average_local() const {
  LocalPolicy policy(average_.size());
  for (size_t s = 0; s < average_.size(); ++s) {
    double sum = 0.0;
    for (double x : average_[s]) sum += x;
    if (sum > 0.0) {
      policy[s].resize(average_[s].size());
      for (size_t k = 0; k < average_[s].size(); ++k) {
        policy[s][k] = average_[s][k] / sum;
      }
    } else {
      policy[s].assign(average_[s].size(), 1.0 / average_[s].size());
    }
  }
  return policy;
}

PolicyTable CfrSolver::average_policy() const {
  return tree_.local_to_table(average_local());
}

void CfrSolver::iterate() {
  // pi^t is frozen from the regrets at iteration start; updates during the
  // walk must not feed back into this iteration's policy.
  const LocalPolicy policy = current_local();
  walk(tree_.root(), 1.0, 1.0, 1.0, policy);
  ++iterations_done_;
}

void CfrSolver::run(int iterations) {
  for (int t = 0; t < iterations; ++t) iterate();
}

std::array<double, 2> CfrSolver::walk(int id, double own0, double own1,
                                      double chance,
                                      const LocalPolicy& policy) {
  const auto& node = tree_.node(id);
  if (node.player == kTerminalPlayer) {
    const double* u = tree_.returns_of(node);
    return {u[0], u[1]};
  }
  if (node.player == kChancePlayer) {
    std::array<double, 2> v{0.0, 0.0};
    for (int k = 0; k < node.num_children; ++k) {
      const int c = node.first_child + k;
      const double p = tree_.node(c).chance_prob;
      const auto child = walk(c, own0, own1, chance * p, policy);
      v[0] += p * child[0];
      v[1] += p * child[1];
    }
    return v;
  }

  const int s = node.info_state;
  const auto& dist = policy[s];
  const PlayerId p = node.player;

  std::array<double, 2> v{0.0, 0.0};
  double q[16][2];
  ARMAC_CHECK(node.num_children <= 16);
  for (int k = 0; k < node.num_children; ++k) {
    const int c = node.first_child + k;
    const auto child =
        p == 0 ? walk(c, own0 * dist[k], own1, chance, policy)
               : walk(c, own0, own1 * dist[k], chance, policy);
    q[k][0] = child[0];
    q[k][1] = child[1];
    v[0] += dist[k] * child[0];
    v[1] += dist[k] * child[1];
  }

  const double opp_reach = chance * (p == 0 ? own1 : own0);
  const double own_reach = p == 0 ? own0 : own1;
  auto& regret = regrets_[s];
  auto& avg = average_[s];
  for (int k = 0; k < node.num_children; ++k) {
    regret[k] += opp_reach * (q[k][p] - v[p]);
    avg[k] += own_reach * dist[k];
  }
  return v;
}

}  // namespace armac
