#include "armac/solvers/best_response.h"

#include <cmath>

namespace armac {

namespace {

// Lazy best-response evaluation: br_action(s) maximizes the opponent-reach
// weighted sum of member-history continuation values, and history values
// are memoized so each node is expanded once.
class BestResponder {
 public:
  BestResponder(const GameTree& tree, const LocalPolicy& policy,
                PlayerId player)
      : tree_(tree),
        policy_(policy),
        player_(player),
        reach_(reach_probabilities(tree, policy)),
        node_value_(tree.nodes().size(), kUnset),
        chosen_(tree.num_info_states(), -1) {}

  double value(int id) {
    double& memo = node_value_[id];
    if (memo != kUnset) return memo;
    const auto& node = tree_.node(id);
    double v = 0.0;
    if (node.player == kTerminalPlayer) {
      v = tree_.returns_of(node)[player_];
    } else if (node.player == kChancePlayer) {
      for (int k = 0; k < node.num_children; ++k) {
        const int c = node.first_child + k;
        v += tree_.node(c).chance_prob * value(c);
      }
    } else if (node.player != player_) {
      const auto& dist = policy_[node.info_state];
      for (int k = 0; k < node.num_children; ++k) {
        v += dist[k] * value(node.first_child + k);
      }
    } else {
      v = value(node.first_child + action(node.info_state));
    }
    memo = v;
    return v;
  }

  int action(int s) {
    int& memo = chosen_[s];
    if (memo >= 0) return memo;
    const auto& rec = tree_.info_state(s);
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < rec.legal.size(); ++k) {
      double v = 0.0;
      for (int id : rec.nodes) {
        v += reach_.opponent_reach(id, player_) *
             value(tree_.node(id).first_child + static_cast<int>(k));
      }
      if (v > best_value) {
        best_value = v;
        best = static_cast<int>(k);
      }
    }
    memo = best;
    return best;
  }

 private:
  static constexpr double kUnset = -std::numeric_limits<double>::max();

  const GameTree& tree_;
  const LocalPolicy& policy_;
  const PlayerId player_;
  const ReachReport reach_;
  std::vector<double> node_value_;
  std::vector<int> chosen_;
};

}  // namespace

BestResponseResult best_response(const GameTree& tree,
                                 const LocalPolicy& policy, PlayerId player) {
  ARMAC_CHECK_MSG(tree.num_players() == 2,
                  "best response expects a two-player game");
  BestResponder responder(tree, policy, player);
  BestResponseResult result;
  result.value = responder.value(tree.root());
  for (int s = 0; s < tree.num_info_states(); ++s) {
    const auto& rec = tree.info_state(s);
    if (rec.player != player) continue;
    ActionDistribution dist(rec.legal.size(), 0.0);
    dist[responder.action(s)] = 1.0;
    result.policy.set(rec.key, std::move(dist));
  }
  return result;
}

NashConvReport nash_conv_report(const GameTree& tree,
                                const LocalPolicy& policy) {
  NashConvReport report;
  const auto values = expected_values(tree, policy);
  for (PlayerId p = 0; p < tree.num_players(); ++p) {
    report.policy_values.push_back(values.value(tree.root(), p));
    report.br_values.push_back(best_response(tree, policy, p).value);
    report.nash_conv += report.br_values.back() - report.policy_values.back();
  }
  return report;
}

double nash_conv(const GameTree& tree, const LocalPolicy& policy) {
  return nash_conv_report(tree, policy).nash_conv;
}

double nash_conv(const GameTree& tree, const PolicyTable& policy) {
  return nash_conv(tree, tree.table_to_local(policy));
}

}  // namespace armac
