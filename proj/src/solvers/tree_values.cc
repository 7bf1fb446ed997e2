#include "armac/solvers/tree_values.h"

namespace armac {

ReachReport reach_probabilities(const GameTree& tree,
                                const LocalPolicy& policy) {
  const int n = tree.num_players();
  const auto& nodes = tree.nodes();
  ReachReport r;
  r.num_players = n;
  r.own.assign(nodes.size() * n, 1.0);
  r.chance.assign(nodes.size(), 1.0);

  // Parents precede children in the node layout, so one forward sweep
  // suffices.
  for (size_t id = 1; id < nodes.size(); ++id) {
    const auto& node = nodes[id];
    const auto& parent = nodes[node.parent];
    for (int p = 0; p < n; ++p) r.own[id * n + p] = r.own[node.parent * n + p];
    r.chance[id] = r.chance[node.parent];
    if (parent.player == kChancePlayer) {
      r.chance[id] *= node.chance_prob;
    } else {
      const int k = static_cast<int>(id) - parent.first_child;
      r.own[id * n + parent.player] *= policy[parent.info_state][k];
    }
  }
  return r;
}

ValueReport expected_values(const GameTree& tree, const LocalPolicy& policy) {
  const int n = tree.num_players();
  const auto& nodes = tree.nodes();
  ValueReport v;
  v.num_players = n;
  v.values.assign(nodes.size() * n, 0.0);

  // Children have larger indices than their parents: one backward sweep.
  for (int id = static_cast<int>(nodes.size()) - 1; id >= 0; --id) {
    const auto& node = nodes[id];
    if (node.player == kTerminalPlayer) {
      const double* u = tree.returns_of(node);
      for (int p = 0; p < n; ++p) v.values[id * n + p] = u[p];
      continue;
    }
    for (int k = 0; k < node.num_children; ++k) {
      const int c = node.first_child + k;
      const double w = node.player == kChancePlayer
                           ? nodes[c].chance_prob
                           : policy[node.info_state][k];
      for (int p = 0; p < n; ++p) v.values[id * n + p] += w * v.values[c * n + p];
    }
  }
  return v;
}

CFValueReport counterfactual_values(const GameTree& tree,
                                    const LocalPolicy& policy,
                                    PlayerId player) {
  const auto reach = reach_probabilities(tree, policy);
  const auto values = expected_values(tree, policy);
  const int n = tree.num_players();

  CFValueReport report;
  report.player = player;
  report.q_c.resize(tree.num_info_states());
  report.v_c.assign(tree.num_info_states(), 0.0);
  report.beta.assign(tree.num_info_states(), 0.0);

  for (int s = 0; s < tree.num_info_states(); ++s) {
    const auto& rec = tree.info_state(s);
    if (rec.player != player) continue;
    report.q_c[s].assign(rec.legal.size(), 0.0);
    for (int id : rec.nodes) {
      const double w = reach.opponent_reach(id, player);
      report.beta[s] += w;
      report.v_c[s] += w * values.value(id, player);
      const auto& node = tree.node(id);
      for (int k = 0; k < node.num_children; ++k) {
        report.q_c[s][k] += w * values.value(node.first_child + k, player);
      }
    }
  }
  (void)n;
  return report;
}

}  // namespace armac
