#include "armac/trainer/tree_backup.h"

namespace armac {

std::vector<std::vector<double>> tree_backup_targets(
    const EpisodeRecord& episode, int num_players, double lambda,
    const CriticFn& critic, const StatePolicyFn& target_policy) {
  ARMAC_CHECK(lambda >= 0.0 && lambda <= 1.0);
  const int num_steps = static_cast<int>(episode.steps.size());
  std::vector<std::vector<double>> targets(
      num_steps, std::vector<double>(num_players, 0.0));
  if (num_steps == 0) return targets;

  std::vector<double> g(num_players);
  if (!episode.truncated) {
    for (int i = 0; i < num_players; ++i) g[i] = episode.returns[i];
  } else if (!episode.final_legal.empty()) {
    // Step cap hit: bootstrap from v(h_last) under the target policy.
    const std::vector<double> q =
        critic(episode.final_history_key, episode.final_legal);
    const ActionDistribution pi =
        target_policy(episode.final_info_key, episode.final_legal);
    for (int i = 0; i < num_players; ++i) {
      double v = 0.0;
      for (size_t k = 0; k < episode.final_legal.size(); ++k) {
        v += pi[k] * q[i * episode.final_legal.size() + k];
      }
      g[i] = v;
    }
  }

  targets[num_steps - 1] = g;
  for (int k = num_steps - 2; k >= 0; --k) {
    const EpisodeStep& next = episode.steps[k + 1];
    const std::vector<double> q = critic(next.history_key, next.legal);
    const ActionDistribution pi =
        target_policy(next.info_key, next.legal);
    for (int i = 0; i < num_players; ++i) {
      double v = 0.0;
      for (size_t a = 0; a < next.legal.size(); ++a) {
        v += pi[a] * q[i * next.legal.size() + a];
      }
      const double q_taken = q[i * next.legal.size() + next.action_pos];
      g[i] = v + lambda * pi[next.action_pos] * (g[i] - q_taken);
    }
    targets[k] = g;
  }
  return targets;
}

}  // namespace armac
