#pragma once

#include <map>

#include "armac/sampling/episode.h"
#include "armac/trainer/tree_backup.h"
#include "support/test_util.h"

namespace armac::testing {

// Drives the Tree-Backup(lambda) recursion to its tabular fixed point on a
// frozen joint policy: sample a fixed batch of full-support episodes, then
// sweep targets-to-means until the table stops moving. Returns the worst
// absolute error of the fixed point against exact per-history action
// values for visited (h, a) pairs.
inline double tree_backup_fixed_point_error(const Game& game,
                                            const GameTree& tree,
                                            const LocalPolicy& target,
                                            double lambda, int num_episodes,
                                            int sweeps, uint64_t seed) {
  const int n = tree.num_players();
  const PolicyTable target_table = tree.local_to_table(target);
  BehaviorFn uniform = [](const State& s) {
    const size_t k = s.legal_actions().size();
    return ActionDistribution(k, 1.0 / k);
  };

  Rng rng(seed);
  std::vector<EpisodeRecord> episodes;
  std::vector<std::vector<int>> episode_nodes;  // tree node per step
  CriticFn zero_critic = [n](const HistoryKey&,
                             const std::vector<Action>& legal) {
    return std::vector<double>(n * legal.size(), 0.0);
  };
  StatePolicyFn pi = [&](const InfoStateKey& key,
                         const std::vector<Action>& legal) {
    return target_table.get(key, static_cast<int>(legal.size()));
  };
  for (int e = 0; e < num_episodes; ++e) {
    const Trajectory traj = sample_episode(game, uniform, rng, e);
    episodes.push_back(build_episode_record(traj, 0, 0, n, zero_critic, pi));
    // Recover tree nodes by replaying raw actions.
    std::vector<int> nodes;
    int node = tree.root();
    for (const auto& step : traj.steps) {
      const auto& rec = tree.node(node);
      for (int k = 0; k < rec.num_children; ++k) {
        if (tree.node(rec.first_child + k).action == step.action) {
          node = rec.first_child + k;
          break;
        }
      }
      if (step.player != kChancePlayer) nodes.push_back(node);
    }
    episode_nodes.push_back(std::move(nodes));
  }

  // q table keyed by history key, one vector of n * |legal| per entry.
  std::map<HistoryKey, std::vector<double>> q;
  CriticFn table_critic = [&](const HistoryKey& key,
                              const std::vector<Action>& legal) {
    auto it = q.find(key);
    if (it == q.end()) return std::vector<double>(n * legal.size(), 0.0);
    return it->second;
  };

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    std::map<HistoryKey, std::pair<std::vector<double>, std::vector<double>>>
        acc;  // sums and counts per (history, head-action slot)
    for (const auto& episode : episodes) {
      const auto targets =
          tree_backup_targets(episode, n, lambda, table_critic, pi);
      for (size_t k = 0; k < episode.steps.size(); ++k) {
        const auto& step = episode.steps[k];
        auto& [sums, counts] = acc[step.history_key];
        if (sums.empty()) {
          sums.assign(n * step.legal.size(), 0.0);
          counts.assign(n * step.legal.size(), 0.0);
        }
        for (int i = 0; i < n; ++i) {
          sums[i * step.legal.size() + step.action_pos] += targets[k][i];
          counts[i * step.legal.size() + step.action_pos] += 1.0;
        }
      }
    }
    for (auto& [key, sc] : acc) {
      auto& cell = q[key];
      if (cell.empty()) cell.assign(sc.first.size(), 0.0);
      for (size_t i = 0; i < sc.first.size(); ++i) {
        if (sc.second[i] > 0.0) cell[i] = sc.first[i] / sc.second[i];
      }
    }
  }

  // Compare against exact q over visited (h, a): the child's expected
  // value under the frozen policy.
  const ValueReport exact = expected_values(tree, target);
  double worst = 0.0;
  for (size_t e = 0; e < episodes.size(); ++e) {
    for (size_t k = 0; k < episodes[e].steps.size(); ++k) {
      const auto& step = episodes[e].steps[k];
      const int node = episode_nodes[e][k];
      const auto& cell = q.at(step.history_key);
      for (int i = 0; i < n; ++i) {
        const double fixed = cell[i * step.legal.size() + step.action_pos];
        const double truth = exact.value(node, i);
        worst = std::max(worst, std::fabs(fixed - truth));
      }
    }
  }
  return worst;
}

}  // namespace armac::testing
