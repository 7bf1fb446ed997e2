#include "armac/trainer/unbiasedness.h"

#include <cmath>
#include <map>

namespace armac {

UnbiasednessReport unbiasedness_harness(const Game& game, const GameTree& tree,
                                        const SnapshotSequence& snapshots,
                                        PlayerId player, int num_trajectories,
                                        const BehaviorFn& exploratory,
                                        Rng& rng) {
  ARMAC_CHECK(!snapshots.empty());
  const WOracleReport exact = exact_w_oracle(tree, snapshots, player);

  // Exact per-history values under each snapshot; advantages are read off
  // the tree during replay.
  std::vector<ValueReport> values;
  values.reserve(snapshots.size());
  std::vector<PolicyTable> tables;
  tables.reserve(snapshots.size());
  for (const auto& snap : snapshots) {
    values.push_back(expected_values(tree, snap));
    tables.push_back(tree.local_to_table(snap));
  }

  struct Welford {
    uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void add(double x) {
      ++count;
      const double d = x - mean;
      mean += d / count;
      m2 += d * (x - mean);
    }
  };
  std::map<std::pair<int, int>, Welford> stats;  // (info state, action pos)

  for (int traj_idx = 0; traj_idx < num_trajectories; ++traj_idx) {
    const size_t j = rng.next_index(snapshots.size());
    const BehaviorFn behavior =
        split_behavior(player, exploratory, table_behavior(tables[j]));
    const Trajectory traj = sample_episode(game, behavior, rng, traj_idx);

    // Replay the action sequence down the tree to recover history nodes.
    int node = tree.root();
    for (const auto& step : traj.steps) {
      const auto& n = tree.node(node);
      int next = -1;
      for (int k = 0; k < n.num_children; ++k) {
        if (tree.node(n.first_child + k).action == step.action) {
          next = n.first_child + k;
          if (step.player == player) {
            const double advantage =
                values[j].value(next, player) - values[j].value(node, player);
            stats[{n.info_state, k}].add(advantage);
          }
          break;
        }
      }
      ARMAC_CHECK_MSG(next >= 0, "trajectory action not found in tree");
      node = next;
    }
  }

  UnbiasednessReport report;
  uint64_t pass = 0;
  for (const auto& [key, w] : stats) {
    const auto& rec = tree.info_state(key.first);
    UnbiasednessReport::Entry e;
    e.key = rec.key;
    e.action = rec.legal[key.second];
    e.visits = w.count;
    e.w_hat = w.mean;
    e.w_exact = exact.w_values[key.first].empty()
                    ? 0.0
                    : exact.w_values[key.first][key.second];
    e.stderr_of_mean =
        w.count > 1 ? std::sqrt(w.m2 / (w.count - 1)) / std::sqrt(w.count)
                    : 0.0;
    const double diff = std::fabs(e.w_hat - e.w_exact);
    e.within_3se =
        e.stderr_of_mean > 0.0 ? diff <= 3.0 * e.stderr_of_mean : diff <= 1e-9;
    pass += e.within_3se;
    report.entries.push_back(std::move(e));
  }
  report.visited_pairs = report.entries.size();
  report.fraction_within_3se =
      report.visited_pairs == 0
          ? 1.0
          : static_cast<double>(pass) / report.visited_pairs;
  return report;
}

}  // namespace armac
