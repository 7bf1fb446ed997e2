#include "armac/solvers/oracles.h"

namespace armac {

WOracleReport exact_w_oracle(const GameTree& tree,
                             const SnapshotSequence& snapshots,
                             PlayerId player) {
  ARMAC_CHECK_MSG(!snapshots.empty(), "need at least one snapshot");
  WOracleReport report;
  report.player = player;
  report.w.assign(tree.num_info_states(), 0.0);
  std::vector<std::vector<double>> numer(tree.num_info_states());
  for (int s = 0; s < tree.num_info_states(); ++s) {
    if (tree.info_state(s).player == player) {
      numer[s].assign(tree.info_state(s).legal.size(), 0.0);
    }
  }

  for (const LocalPolicy& policy : snapshots) {
    const auto reach = reach_probabilities(tree, policy);
    const auto values = expected_values(tree, policy);
    for (int s = 0; s < tree.num_info_states(); ++s) {
      const auto& rec = tree.info_state(s);
      if (rec.player != player) continue;
      for (int id : rec.nodes) {
        const double w_h = reach.opponent_reach(id, player);
        if (w_h == 0.0) continue;
        report.w[s] += w_h;
        const auto& node = tree.node(id);
        const double v_h = values.value(id, player);
        for (int k = 0; k < node.num_children; ++k) {
          const double q_h = values.value(node.first_child + k, player);
          numer[s][k] += w_h * (q_h - v_h);
        }
      }
    }
  }

  report.w_values.resize(tree.num_info_states());
  for (int s = 0; s < tree.num_info_states(); ++s) {
    if (tree.info_state(s).player != player || report.w[s] <= 0.0) continue;
    report.w_values[s].resize(numer[s].size());
    for (size_t k = 0; k < numer[s].size(); ++k) {
      report.w_values[s][k] = numer[s][k] / report.w[s];
    }
  }
  return report;
}

std::vector<std::vector<double>> cumulative_regret_oracle(
    const GameTree& tree, const SnapshotSequence& snapshots, PlayerId player) {
  std::vector<std::vector<double>> regret(tree.num_info_states());
  for (int s = 0; s < tree.num_info_states(); ++s) {
    if (tree.info_state(s).player == player) {
      regret[s].assign(tree.info_state(s).legal.size(), 0.0);
    }
  }
  for (const LocalPolicy& policy : snapshots) {
    const auto cf = counterfactual_values(tree, policy, player);
    for (int s = 0; s < tree.num_info_states(); ++s) {
      if (tree.info_state(s).player != player) continue;
      for (size_t k = 0; k < regret[s].size(); ++k) {
        regret[s][k] += cf.q_c[s][k] - cf.v_c[s];
      }
    }
  }
  return regret;
}

}  // namespace armac
