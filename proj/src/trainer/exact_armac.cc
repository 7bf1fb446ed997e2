#include "armac/trainer/exact_armac.h"

namespace armac {

ExactArmacTrainer::ExactArmacTrainer(const GameTree& tree) : tree_(tree) {
  ARMAC_CHECK_MSG(tree.num_players() == 2,
                  "exact mode expects a two-player game");
  const int n = tree.num_info_states();
  policy_.resize(n);
  numer_.resize(n);
  w_.resize(n);
  average_.resize(n);
  denom_.assign(n, 0.0);
  for (int s = 0; s < n; ++s) {
    const size_t legal = tree.info_state(s).legal.size();
    policy_[s].assign(legal, 1.0 / legal);  // theta^0: uniform everywhere
    numer_[s].assign(legal, 0.0);
    w_[s].assign(legal, 0.0);
    average_[s].assign(legal, 0.0);
  }
}

void ExactArmacTrainer::epoch() {
  const auto reach = reach_probabilities(tree_, policy_);
  const auto values = expected_values(tree_, policy_);

  for (int s = 0; s < tree_.num_info_states(); ++s) {
    const auto& rec = tree_.info_state(s);
    const PlayerId p = rec.player;
    for (int id : rec.nodes) {
      const double w_h = reach.opponent_reach(id, p);
      const auto& node = tree_.node(id);
      if (w_h > 0.0) {
        denom_[s] += w_h;
        const double v_h = values.value(id, p);
        for (int k = 0; k < node.num_children; ++k) {
          numer_[s][k] +=
              w_h * (values.value(node.first_child + k, p) - v_h);
        }
      }
    }
    for (int id : rec.nodes) {
      const double own = reach.own_reach(id, p);
      for (size_t k = 0; k < policy_[s].size(); ++k) {
        average_[s][k] += own * policy_[s][k];
      }
    }
    if (denom_[s] > 0.0) {
      for (size_t k = 0; k < numer_[s].size(); ++k) {
        w_[s][k] = numer_[s][k] / denom_[s];
      }
    }
    policy_[s] = regret_matching(w_[s]);
  }
  ++epochs_done_;
}

void ExactArmacTrainer::run(int epochs) {
  for (int t = 0; t < epochs; ++t) epoch();
}

LocalPolicy ExactArmacTrainer::average_local() const {
  LocalPolicy avg(average_.size());
  for (size_t s = 0; s < average_.size(); ++s) {
    double sum = 0.0;
    for (double x : average_[s]) sum += x;
    if (sum > 0.0) {
      avg[s].resize(average_[s].size());
      for (size_t k = 0; k < average_[s].size(); ++k) {
        avg[s][k] = average_[s][k] / sum;
      }
    } else {
      avg[s].assign(average_[s].size(), 1.0 / average_[s].size());
    }
  }
  return avg;
}

PolicyTable ExactArmacTrainer::average_policy() const {
  return tree_.local_to_table(average_local());
}

}  // namespace armac
