#include "armac/sampling/outcome_sampling.h"

#include <unordered_map>

#include "armac/approx/regressor.h"
#include "armac/solvers/best_response.h"

namespace armac {

namespace {

using TargetFn = std::function<ActionDistribution(const InfoStateKey&, int)>;

SampledCFEstimate estimate_impl(const Trajectory& traj, const TargetFn& target,
                                PlayerId learner) {
  SampledCFEstimate est;
  est.player = learner;
  est.sample_count = 1;
  if (traj.steps.empty()) return est;

  std::vector<int> learner_steps;
  double own_sampling = 1.0;
  for (size_t k = 0; k < traj.steps.size(); ++k) {
    const auto& step = traj.steps[k];
    if (step.player != learner) continue;
    if (!(step.prob > 0.0)) {
      throw InputError("zero behavior probability: estimator undefined");
    }
    own_sampling *= step.prob;
    learner_steps.push_back(static_cast<int>(k));
  }

  const double u = traj.returns[learner];
  double tail = 1.0;  // product of target probs at learner steps after k
  for (auto it = learner_steps.rbegin(); it != learner_steps.rend(); ++it) {
    const auto& step = traj.steps[*it];
    est.entries[{step.info_key, step.action}] = u * tail / own_sampling;
    const ActionDistribution pi =
        target(step.info_key, static_cast<int>(step.legal.size()));
    tail *= pi[step.action_pos];
  }
  return est;
}

}  // namespace

SampledCFEstimate outcome_sampling_estimate(const Trajectory& trajectory,
                                            const PolicyTable& target,
                                            PlayerId learner) {
  return estimate_impl(
      trajectory,
      [&target](const InfoStateKey& key, int num_legal) {
        return target.get(key, num_legal);
      },
      learner);
}

MccfrResult mccfr_outcome_sampling_run(const Game& game, const GameTree& tree,
                                       const MccfrConfig& config, Rng& rng) {
  ARMAC_CHECK(config.exploration > 0.0 && config.exploration <= 1.0);
  ARMAC_CHECK(game.descriptor().num_players == 2);

  std::unordered_map<InfoStateKey, std::vector<double>> regrets;
  std::unordered_map<InfoStateKey, std::vector<double>> average;

  auto rm_policy = [&regrets](const InfoStateKey& key,
                              int num_legal) -> ActionDistribution {
    auto it = regrets.find(key);
    if (it == regrets.end()) {
      return ActionDistribution(num_legal, 1.0 / num_legal);
    }
    return regret_matching(it->second);
  };

  auto average_table = [&average, &tree]() {
    PolicyTable table;
    for (const auto& rec : tree.info_states()) {
      auto it = average.find(rec.key);
      if (it == average.end()) continue;
      double sum = 0.0;
      for (double x : it->second) sum += x;
      if (sum <= 0.0) continue;
      ActionDistribution dist(it->second.size());
      for (size_t k = 0; k < dist.size(); ++k) dist[k] = it->second[k] / sum;
      table.set(rec.key, dist);
    }
    return table;
  };

  MccfrResult result;
  for (int t = 1; t <= config.iterations; ++t) {
    const PlayerId learner = (t - 1) % 2;
    const double eps = config.exploration;

    auto behavior = [&](const State& state) -> ActionDistribution {
      const PlayerId p = state.current_player();
      ActionDistribution pi =
          rm_policy(state.info_state_key(p),
                    static_cast<int>(state.legal_actions().size()));
      return p == learner ? epsilon_mix(pi, eps) : pi;
    };
    const Trajectory traj = sample_episode(game, behavior, rng, t);
    result.acting_steps += traj.steps.size();
    const SampledCFEstimate est = estimate_impl(traj, rm_policy, learner);

    // Walk forward over the learner's steps, tracking own target and own
    // sampling reach up to (but excluding) each visited state.
    double own_pi = 1.0;
    double own_mu = 1.0;
    for (const auto& step : traj.steps) {
      if (step.player != learner) continue;
      const ActionDistribution pi =
          rm_policy(step.info_key, static_cast<int>(step.legal.size()));
      const double q_taken = est.entries.at({step.info_key, step.action});
      const double v = pi[step.action_pos] * q_taken;

      auto& regret = regrets[step.info_key];
      if (regret.empty()) regret.assign(step.legal.size(), 0.0);
      for (size_t k = 0; k < regret.size(); ++k) {
        const double q = static_cast<int>(k) == step.action_pos ? q_taken : 0.0;
        regret[k] += q - v;
      }

      auto& avg = average[step.info_key];
      if (avg.empty()) avg.assign(step.legal.size(), 0.0);
      const double weight = own_pi / own_mu;
      for (size_t k = 0; k < avg.size(); ++k) avg[k] += weight * pi[k];

      own_pi *= pi[step.action_pos];
      own_mu *= step.prob;
    }

    if (config.eval_interval > 0 &&
        (t % config.eval_interval == 0 || t == config.iterations)) {
      result.nash_conv_trace.push_back(
          {t, result.acting_steps, nash_conv(tree, average_table())});
    }
  }
  result.average_policy = average_table();
  return result;
}

MccfrResult mc_rcfr_run(const Game& game, const GameTree& tree,
                        const MccfrConfig& config,
                        const RegressorSpec& backing, Rng& rng) {
  ARMAC_CHECK(config.exploration > 0.0 && config.exploration <= 1.0);
  ARMAC_CHECK(game.descriptor().num_players == 2);
  const GameDescriptor& desc = game.descriptor();

  auto make_head = [&](uint64_t salt) {
    RegressorSpec spec = backing;
    spec.input_width = info_feature_width(desc);
    spec.output_width = desc.max_actions;
    return make_regressor(spec, Rng::derive(rng.next_u64(), salt).next_u64());
  };
  std::unique_ptr<Regressor> regret_head = make_head(1);
  std::unique_ptr<Regressor> avg_head = make_head(2);

  auto rm_policy = [&](const InfoStateKey& key,
                       const std::vector<Action>& legal) {
    const std::vector<double> pred =
        regret_head->predict(info_features_from_key(key, desc));
    std::vector<double> vals(legal.size());
    for (size_t k = 0; k < legal.size(); ++k) vals[k] = pred[legal[k]];
    return regret_matching(vals);
  };
  auto rm_policy_by_count = [&](const InfoStateKey& key,
                                int num_legal) -> ActionDistribution {
    // Estimator callback: action ids are recoverable from the trajectory
    // step, but the plain count suffices here only for tabular fallbacks;
    // resolve legality through the tree instead.
    const int s = tree.info_state_id(key);
    ARMAC_CHECK(s >= 0);
    ARMAC_CHECK(static_cast<int>(tree.info_state(s).legal.size()) ==
                num_legal);
    return rm_policy(key, tree.info_state(s).legal);
  };

  auto mask_of = [&](const std::vector<Action>& legal) {
    std::vector<uint8_t> mask(desc.max_actions, 0);
    for (Action a : legal) mask[a] = 1;
    return mask;
  };

  auto average_table = [&]() {
    PolicyTable table;
    for (const auto& rec : tree.info_states()) {
      table.set(rec.key, avg_head->predict_distribution(
                             info_features_from_key(rec.key, desc),
                             mask_of(rec.legal)));
    }
    return table;
  };

  MccfrResult result;
  for (int t = 1; t <= config.iterations; ++t) {
    const PlayerId learner = (t - 1) % 2;
    auto behavior = [&](const State& state) -> ActionDistribution {
      const PlayerId p = state.current_player();
      ActionDistribution pi =
          rm_policy(state.info_state_key(p), state.legal_actions());
      return p == learner ? epsilon_mix(pi, config.exploration) : pi;
    };
    const Trajectory traj = sample_episode(game, behavior, rng, t);
    result.acting_steps += traj.steps.size();
    const SampledCFEstimate est =
        estimate_impl(traj, rm_policy_by_count, learner);

    double own_pi = 1.0;
    double own_mu = 1.0;
    Batch regret_batch, avg_batch;
    for (const auto& step : traj.steps) {
      if (step.player != learner) continue;
      const ActionDistribution pi = rm_policy(step.info_key, step.legal);
      const double q_taken = est.entries.at({step.info_key, step.action});
      const double v = pi[step.action_pos] * q_taken;

      Example reg;
      reg.features = info_features_from_key(step.info_key, desc);
      reg.target.assign(desc.max_actions, 0.0);
      reg.mask = mask_of(step.legal);
      for (size_t k = 0; k < step.legal.size(); ++k) {
        const double q = static_cast<int>(k) == step.action_pos ? q_taken : 0.0;
        reg.target[step.legal[k]] = q - v;
      }
      regret_batch.push_back(std::move(reg));

      const double avg_weight = own_pi / own_mu;
      if (avg_weight > 0.0) {
        Example avg;
        avg.features = info_features_from_key(step.info_key, desc);
        avg.target.assign(desc.max_actions, 0.0);
        avg.mask = mask_of(step.legal);
        for (size_t k = 0; k < step.legal.size(); ++k) {
          avg.target[step.legal[k]] = pi[k];
        }
        avg.weight = avg_weight;
        avg_batch.push_back(std::move(avg));
      }

      own_pi *= pi[step.action_pos];
      own_mu *= step.prob;
    }
    if (!regret_batch.empty()) regret_head->train_regression(regret_batch);
    if (!avg_batch.empty()) avg_head->train_classification(avg_batch);

    if (config.eval_interval > 0 &&
        (t % config.eval_interval == 0 || t == config.iterations)) {
      result.nash_conv_trace.push_back(
          {t, result.acting_steps, nash_conv(tree, average_table())});
    }
  }
  result.average_policy = average_table();
  return result;
}

}  // namespace armac
