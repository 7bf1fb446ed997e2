#include "armac/sampling/episode.h"

namespace armac {

EpisodeRecord build_episode_record(const Trajectory& trajectory,
                                   PlayerId learner, int snapshot_index,
                                   int num_players, const CriticFn& critic,
                                   const StatePolicyFn& snapshot_policy) {
  EpisodeRecord record;
  record.learner = learner;
  record.snapshot_index = snapshot_index;
  record.returns = trajectory.returns;
  record.truncated = trajectory.truncated;
  record.final_history_key = trajectory.final_history_key;
  record.final_info_key = trajectory.final_info_key;
  record.final_legal = trajectory.final_legal;
  record.seed_id = trajectory.seed_id;

  for (const auto& step : trajectory.steps) {
    if (step.player == kChancePlayer) continue;
    EpisodeStep out;
    out.acting = step.player;
    out.info_key = step.info_key;
    out.history_key = step.history_key;
    out.legal = step.legal;
    out.action = step.action;
    out.action_pos = step.action_pos;
    out.snapshot_policy =
        snapshot_policy(step.info_key, step.legal);

    const std::vector<double> q = critic(step.history_key, step.legal);
    ARMAC_CHECK_MSG(
        q.size() == step.legal.size() * static_cast<size_t>(num_players),
        "critic output width mismatch");
    const double* q_acting = q.data() + out.acting * step.legal.size();
    double v = 0.0;
    for (size_t k = 0; k < step.legal.size(); ++k) {
      v += out.snapshot_policy[k] * q_acting[k];
    }
    out.advantages.resize(step.legal.size());
    for (size_t k = 0; k < step.legal.size(); ++k) {
      out.advantages[k] = q_acting[k] - v;
    }
    record.steps.push_back(std::move(out));
  }
  return record;
}

}  // namespace armac
