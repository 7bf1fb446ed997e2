#include "armac/trainer/armac_trainer.h"

#include <iostream>

#include "armac/util/parallel.h"

namespace armac {

std::vector<uint8_t> legal_mask(const std::vector<Action>& legal, int width) {
  std::vector<uint8_t> mask(width, 0);
  for (Action a : legal) {
    ARMAC_CHECK(a >= 0 && a < width);
    mask[a] = 1;
  }
  return mask;
}

CriticFn critic_eval_fn(const Regressor& critic, const GameDescriptor& desc) {
  return [&critic, desc](const HistoryKey& key,
                         const std::vector<Action>& legal) {
    const std::vector<double> pred =
        critic.predict(history_features_from_key(key, desc));
    std::vector<double> out(desc.num_players * legal.size());
    for (int i = 0; i < desc.num_players; ++i) {
      for (size_t k = 0; k < legal.size(); ++k) {
        out[i * legal.size() + k] = pred[i * desc.max_actions + legal[k]];
      }
    }
    return out;
  };
}

StatePolicyFn w_head_policy_fn(const Regressor& w_head,
                               const GameDescriptor& desc) {
  return [&w_head, desc](const InfoStateKey& key,
                         const std::vector<Action>& legal) {
    const std::vector<double> pred =
        w_head.predict(info_features_from_key(key, desc));
    std::vector<double> values(legal.size());
    for (size_t k = 0; k < legal.size(); ++k) values[k] = pred[legal[k]];
    return regret_matching(values);
  };
}

ArmacTrainer::ArmacTrainer(std::shared_ptr<const Game> game,
                           const GameTree* tree, const ArmacConfig& config)
    : game_(std::move(game)),
      tree_(tree),
      config_(config),
      desc_(game_->descriptor()),
      rng_(Rng::derive(config.seed, 0x5eed)),
      reservoir_(config.reservoir_capacity),
      replay_(config.replay_capacity) {
  ARMAC_CHECK(config_.k_act >= 1 && config_.k_learn >= 1);
  ARMAC_CHECK(config_.lambda >= 0.0 && config_.lambda <= 1.0);

  auto head_spec = [&](int input, int output) {
    RegressorSpec spec;
    spec.kind = config_.head_kind;
    spec.input_width = input;
    spec.output_width = output;
    spec.hidden = config_.hidden;
    spec.step_size = config_.step_size;
    spec.beta1 = config_.beta1;
    spec.beta2 = config_.beta2;
    spec.adam_epsilon = config_.adam_epsilon;
    return spec;
  };
  const int info_width = info_feature_width(desc_);
  const int hist_width = history_feature_width(desc_);
  w_head_ = make_regressor(head_spec(info_width, desc_.max_actions),
                           Rng::derive(config_.seed, 11).next_u64());
  avg_head_ = make_regressor(head_spec(info_width, desc_.max_actions),
                             Rng::derive(config_.seed, 22).next_u64());
  critic_ = make_regressor(
      head_spec(hist_width, desc_.num_players * desc_.max_actions),
      Rng::derive(config_.seed, 33).next_u64());
  epoch_w_ = w_head_->clone();

  init_snapshot_ = make_snapshot(-1);
  latest_snapshot_ = init_snapshot_;
  candidates_ = default_candidates(config_.epsilon_grid);
  candidate_returns_.assign(candidates_.size(), 0.0);
}

std::shared_ptr<const PolicySnapshot> ArmacTrainer::make_snapshot(
    int epoch) const {
  auto snap = std::make_shared<PolicySnapshot>();
  snap->epoch = epoch;
  snap->w_head = std::shared_ptr<const Regressor>(w_head_->clone());
  snap->avg_head = std::shared_ptr<const Regressor>(avg_head_->clone());
  snap->critic = std::shared_ptr<const Regressor>(critic_->clone());
  snap->acting_steps = acting_steps_;
  snap->seed = config_.seed;
  return snap;
}

std::shared_ptr<const PolicySnapshot> ArmacTrainer::draw_reservoir_snapshot() {
  if (reservoir_.empty()) return init_snapshot_;
  return reservoir_.sample(rng_);
}

BehaviorFn ArmacTrainer::snapshot_behavior(
    std::shared_ptr<const PolicySnapshot> snap) const {
  const GameDescriptor desc = desc_;
  return [snap, desc](const State& state) {
    const PlayerId p = state.current_player();
    const std::vector<Action> legal = state.legal_actions();
    const std::vector<double> pred =
        snap->w_head->predict(info_features(state, p));
    std::vector<double> values(legal.size());
    for (size_t k = 0; k < legal.size(); ++k) values[k] = pred[legal[k]];
    return regret_matching(values);
  };
}

BehaviorFn ArmacTrainer::candidate_behavior(
    std::shared_ptr<const PolicySnapshot> snap,
    const CandidatePolicy& candidate) const {
  const GameDescriptor desc = desc_;
  switch (candidate.kind) {
    case CandidateKind::kUniform:
      return [](const State& state) {
        const size_t n = state.legal_actions().size();
        return ActionDistribution(n, 1.0 / n);
      };
    case CandidateKind::kMeanRegret: {
      const double eps = candidate.epsilon;
      BehaviorFn base = snapshot_behavior(snap);
      return [base, eps](const State& state) {
        return epsilon_mix(base(state), eps);
      };
    }
    case CandidateKind::kAverage:
      return [snap, desc](const State& state) {
        const PlayerId p = state.current_player();
        const std::vector<Action> legal = state.legal_actions();
        return snap->avg_head->predict_distribution(
            info_features(state, p), legal_mask(legal, desc.max_actions));
      };
    case CandidateKind::kCurrentRegret: {
      // Regret matching over the snapshot critic's immediate advantages
      // q(h,a) - v(h), with v weighted by the snapshot's own policy.
      const double eps = candidate.epsilon;
      return [snap, desc, eps](const State& state) {
        const PlayerId p = state.current_player();
        const std::vector<Action> legal = state.legal_actions();
        const std::vector<double> q_pred =
            snap->critic->predict(history_features(state));
        const std::vector<double> w_pred =
            snap->w_head->predict(info_features(state, p));
        std::vector<double> w_vals(legal.size());
        for (size_t k = 0; k < legal.size(); ++k) w_vals[k] = w_pred[legal[k]];
        const ActionDistribution pi = regret_matching(w_vals);
        double v = 0.0;
        std::vector<double> q(legal.size());
        for (size_t k = 0; k < legal.size(); ++k) {
          q[k] = q_pred[p * desc.max_actions + legal[k]];
          v += pi[k] * q[k];
        }
        for (double& x : q) x -= v;
        return epsilon_mix(regret_matching(q), eps);
      };
    }
  }
  ARMAC_CHECK(false);
  return {};
}

ArmacTrainer::EpisodeSetup ArmacTrainer::draw_episode_setup() {
  EpisodeSetup setup;
  setup.learner = next_learner_;
  next_learner_ = (next_learner_ + 1) % desc_.num_players;
  setup.advantage_snapshot = draw_reservoir_snapshot();
  setup.used_latest = rng_.next_double() < 0.5;
  setup.behavior_snapshot =
      setup.used_latest ? latest_snapshot_ : draw_reservoir_snapshot();
  const bool use_primary = rng_.next_double() < 0.5;
  setup.candidate =
      use_primary ? candidates_[primary_candidate_]
                  : candidates_[rng_.next_index(candidates_.size())];
  return setup;
}

void ArmacTrainer::begin_epoch(int epoch) {
  (void)epoch;
  if (config_.reset_replay_per_epoch) replay_.clear();
  epoch_w_ = w_head_->clone();
}

void ArmacTrainer::select_candidate(int epoch) {
  candidate_returns_.assign(candidates_.size(), 0.0);
  const int per_candidate = config_.candidate_eval_episodes;
  if (per_candidate <= 0) {
    primary_candidate_ = 0;
    return;
  }

  const int n = desc_.num_players;
  const auto latest = latest_snapshot_;
  const int num_jobs = static_cast<int>(candidates_.size()) * per_candidate;
  std::vector<double> job_return(num_jobs, 0.0);
  std::vector<EpisodeRecord> records(num_jobs);

  BehaviorFn avg_behavior = [latest, this](const State& state) {
    const PlayerId p = state.current_player();
    return latest->avg_head->predict_distribution(
        info_features(state, p),
        legal_mask(state.legal_actions(), desc_.max_actions));
  };

  const uint64_t base_episode = episodes_played_;
  parallel_for(num_jobs, config_.num_threads, [&](int job) {
    const int c = job / per_candidate;
    const int e = job % per_candidate;
    const PlayerId seat = n == 1 ? 0 : e % 2;
    BehaviorFn cand = candidate_behavior(latest, candidates_[c]);
    BehaviorFn behavior =
        n == 1 ? cand : split_behavior(seat, cand, avg_behavior);
    Rng rng = Rng::derive(config_.seed, 0xE7A1, epoch, job);
    const uint64_t seed_id = base_episode + job;
    Trajectory traj = sample_episode(*game_, behavior, rng, seed_id);
    job_return[job] = traj.returns[seat];
    if (config_.eval_episodes_to_replay) {
      records[job] = build_episode_record(
          traj, seat, latest->epoch, n, critic_eval_fn(*latest->critic, desc_),
          w_head_policy_fn(*latest->w_head, desc_));
      records[job].head_eligible = false;
    }
  });

  for (int job = 0; job < num_jobs; ++job) {
    candidate_returns_[job / per_candidate] += job_return[job];
    if (config_.eval_episodes_to_replay) {
      acting_steps_ += records[job].steps.size();
      if (desc_.id == GameId::kGridworld && first_plus2_episode_ < 0 &&
          records[job].returns[0] == 2.0) {
        first_plus2_episode_ = static_cast<int64_t>(base_episode + job);
      }
      replay_.add(std::move(records[job]));
    }
  }
  episodes_played_ += num_jobs;

  for (double& r : candidate_returns_) r /= per_candidate;
  primary_candidate_ = 0;
  for (size_t c = 1; c < candidates_.size(); ++c) {
    if (candidate_returns_[c] > candidate_returns_[primary_candidate_]) {
      primary_candidate_ = static_cast<int>(c);
    }
  }
}

void ArmacTrainer::act_epoch(int epoch) {
  const int n = desc_.num_players;
  std::vector<EpisodeSetup> setups(config_.k_act);
  for (auto& setup : setups) setup = draw_episode_setup();

  const uint64_t base_episode = episodes_played_;
  std::vector<EpisodeRecord> records(config_.k_act);
  parallel_for(config_.k_act, config_.num_threads, [&](int k) {
    const EpisodeSetup& setup = setups[k];
    BehaviorFn learner_b =
        candidate_behavior(setup.behavior_snapshot, setup.candidate);
    BehaviorFn behavior =
        n == 1 ? learner_b
               : split_behavior(setup.learner, learner_b,
                                snapshot_behavior(setup.advantage_snapshot));
    Rng rng = Rng::derive(config_.seed, 0xAC7, epoch, k);
    const uint64_t seed_id = base_episode + k;
    Trajectory traj = sample_episode(*game_, behavior, rng, seed_id);
    records[k] = build_episode_record(
        traj, setup.learner, setup.advantage_snapshot->epoch, n,
        critic_eval_fn(*setup.advantage_snapshot->critic, desc_),
        w_head_policy_fn(*setup.advantage_snapshot->w_head, desc_));
  });

  for (int k = 0; k < config_.k_act; ++k) {
    acting_steps_ += records[k].steps.size();
    if (desc_.id == GameId::kGridworld && first_plus2_episode_ < 0 &&
        records[k].returns[0] == 2.0) {
      first_plus2_episode_ = static_cast<int64_t>(base_episode + k);
    }
    replay_.add(std::move(records[k]));
  }
  episodes_played_ += config_.k_act;
}

void ArmacTrainer::learn_epoch(int epoch) {
  (void)epoch;
  if (replay_.empty()) {
    if (!warned_empty_replay_) {
      std::cerr << "armac: learn_epoch called with empty replay; skipping\n";
      warned_empty_replay_ = true;
    }
    return;
  }

  const int n = desc_.num_players;
  const int max_actions = desc_.max_actions;
  const CriticFn critic_now = critic_eval_fn(*critic_, desc_);
  const StatePolicyFn pi_t = w_head_policy_fn(*epoch_w_, desc_);

  for (int step = 0; step < config_.k_learn; ++step) {
    Batch critic_batch, w_batch, pi_batch;
    for (int b = 0; b < config_.batch_episodes; ++b) {
      const EpisodeRecord& rec =
          replay_.at(rng_.next_index(replay_.size()));
      const auto targets =
          tree_backup_targets(rec, n, config_.lambda, critic_now, pi_t);
      for (size_t i = 0; i < rec.steps.size(); ++i) {
        const EpisodeStep& es = rec.steps[i];
        Example ce;
        ce.features = history_features_from_key(es.history_key, desc_);
        ce.target.assign(n * max_actions, 0.0);
        ce.mask.assign(n * max_actions, 0);
        for (int head = 0; head < n; ++head) {
          ce.target[head * max_actions + es.action] = targets[i][head];
          ce.mask[head * max_actions + es.action] = 1;
        }
        critic_batch.push_back(std::move(ce));

        if (!rec.head_eligible) continue;
        if (es.acting == rec.learner) {
          Example we;
          we.features = info_features_from_key(es.info_key, desc_);
          we.target.assign(max_actions, 0.0);
          we.mask = legal_mask(es.legal, max_actions);
          for (size_t k = 0; k < es.legal.size(); ++k) {
            we.target[es.legal[k]] = es.advantages[k];
          }
          w_batch.push_back(std::move(we));
        } else {
          Example pe;
          pe.features = info_features_from_key(es.info_key, desc_);
          pe.target.assign(max_actions, 0.0);
          pe.mask = legal_mask(es.legal, max_actions);
          for (size_t k = 0; k < es.legal.size(); ++k) {
            pe.target[es.legal[k]] = es.snapshot_policy[k];
          }
          pi_batch.push_back(std::move(pe));
        }
      }
    }
    if (!critic_batch.empty()) critic_->train_regression(critic_batch);
    if (!w_batch.empty()) w_head_->train_regression(w_batch);
    if (!pi_batch.empty()) avg_head_->train_classification(pi_batch);
  }
}

void ArmacTrainer::save_snapshot(int epoch) {
  latest_snapshot_ = make_snapshot(epoch);
  reservoir_.insert(latest_snapshot_, rng_);
}

ActionDistribution ArmacTrainer::derive_current_policy(
    const InfoStateKey& key, const std::vector<Action>& legal) const {
  const std::vector<double> pred =
      w_head_->predict(info_features_from_key(key, desc_));
  std::vector<double> values(legal.size());
  for (size_t k = 0; k < legal.size(); ++k) values[k] = pred[legal[k]];
  return regret_matching(values);
}

PolicyTable ArmacTrainer::extract_current_policy() const {
  ARMAC_CHECK_MSG(tree_, "needs an enumerated tree");
  PolicyTable table;
  for (const auto& rec : tree_->info_states()) {
    table.set(rec.key, derive_current_policy(rec.key, rec.legal));
  }
  return table;
}

PolicyTable ArmacTrainer::extract_average_policy() const {
  ARMAC_CHECK_MSG(tree_, "needs an enumerated tree");
  PolicyTable table;
  for (const auto& rec : tree_->info_states()) {
    table.set(rec.key, avg_head_->predict_distribution(
                           info_features_from_key(rec.key, desc_),
                           legal_mask(rec.legal, desc_.max_actions)));
  }
  return table;
}

void ArmacTrainer::evaluate_nash_conv(EpochMetrics& m) const {
  if (!tree_) return;
  m.nash_conv_avg = nash_conv(*tree_, extract_average_policy());
  m.nash_conv_current = nash_conv(*tree_, extract_current_policy());
}

ArmacRunResult ArmacTrainer::run() {
  ArmacRunResult result;
  for (int t = 0; t < config_.epochs; ++t) {
    begin_epoch(t);
    select_candidate(t);
    act_epoch(t);
    learn_epoch(t);
    save_snapshot(t);

    EpochMetrics m;
    m.epoch = t;
    m.acting_steps = acting_steps_;
    m.candidate_returns = candidate_returns_;
    m.primary_candidate = primary_candidate_;
    if (tree_ && config_.eval_interval > 0 &&
        (t % config_.eval_interval == 0 || t == config_.epochs - 1)) {
      evaluate_nash_conv(m);
    }
    result.metrics.push_back(std::move(m));
  }
  if (tree_) {
    result.average_policy = extract_average_policy();
    result.current_policy = extract_current_policy();
  }
  result.acting_steps = acting_steps_;
  result.episodes_played = episodes_played_;
  result.first_plus2_episode = first_plus2_episode_;
  return result;
}

}  // namespace armac
