#pragma once

#include "armac/games/registry.h"
#include "armac/solvers/best_response.h"
#include "armac/trainer/candidates.h"
#include "armac/trainer/snapshot.h"
#include "armac/trainer/tree_backup.h"

namespace armac {

struct ArmacConfig {
  int epochs = 100;
  int k_act = 512;           // acting episodes per epoch
  int k_learn = 100;         // learning steps per epoch
  int batch_episodes = 64;   // episodes per learning step
  double lambda = 0.5;       // Tree-Backup trace parameter
  int reservoir_capacity = 1024;
  std::vector<double> epsilon_grid = {0.0, 0.01, 0.05};
  int candidate_eval_episodes = 128;  // per candidate per epoch
  // Candidate-evaluation episodes go to replay as critic-only records
  // (ineligible for the mean-regret and average heads).
  bool eval_episodes_to_replay = true;
  bool reset_replay_per_epoch = true;  // Algorithm-faithful default
  int replay_capacity = 8192;
  int eval_interval = 10;  // NashConv cadence, in epochs
  RegressorKind head_kind = RegressorKind::kTabularMean;
  std::vector<int> hidden = {64, 64};
  double step_size = 5e-5;
  double beta1 = 0.0;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  uint64_t seed = 1;
  int num_threads = 1;  // actor parallelism; results identical at any value
};

struct EpochMetrics {
  int epoch = 0;
  uint64_t acting_steps = 0;
  double nash_conv_avg = -1.0;      // -1 marks "not evaluated"
  double nash_conv_current = -1.0;
  std::vector<double> candidate_returns;
  int primary_candidate = 0;
};

struct ArmacRunResult {
  std::vector<EpochMetrics> metrics;
  PolicyTable average_policy;
  PolicyTable current_policy;
  uint64_t acting_steps = 0;
  uint64_t episodes_played = 0;
  int64_t first_plus2_episode = -1;  // gridworld: first episode returning +2
};

// The sampled trainer: epoch loop over acting (episodes against reservoir
// snapshots, no importance weights anywhere), candidate selection, and
// learning (Tree-Backup critic, mean-regret regression, average-policy
// classification). `tree` may be null for games that cannot be enumerated
// (then NashConv columns stay empty).
class ArmacTrainer {
 public:
  ArmacTrainer(std::shared_ptr<const Game> game, const GameTree* tree,
               const ArmacConfig& config);

  ArmacRunResult run();

  // Epoch pieces, exposed for targeted tests. `run` drives them in the
  // order: reset replay, freeze pi^t, select candidate, act, learn, save.
  void begin_epoch(int epoch);
  void select_candidate(int epoch);
  void act_epoch(int epoch);
  void learn_epoch(int epoch);
  void save_snapshot(int epoch);

  // pi^t at one information state: regret matching over the mean-regret
  // head's predictions at the legal actions.
  ActionDistribution derive_current_policy(const InfoStateKey& key,
                                           const std::vector<Action>& legal) const;

  PolicyTable extract_current_policy() const;  // needs a tree
  PolicyTable extract_average_policy() const;

  const std::vector<CandidatePolicy>& candidates() const { return candidates_; }
  const std::vector<double>& candidate_returns() const {
    return candidate_returns_;
  }
  int primary_candidate() const { return primary_candidate_; }

  const Regressor& w_head() const { return *w_head_; }
  const Regressor& avg_head() const { return *avg_head_; }
  const Regressor& critic() const { return *critic_; }
  Regressor& mutable_critic() { return *critic_; }
  const ReplayBuffer& replay() const { return replay_; }
  const PolicyReservoir& reservoir() const { return reservoir_; }
  uint64_t episodes_played() const { return episodes_played_; }
  uint64_t acting_steps() const { return acting_steps_; }
  int64_t first_plus2_episode() const { return first_plus2_episode_; }

  // Per-episode behavior construction (latest-or-reservoir snapshot, then
  // candidate modulation). Exposed so the mixing statistics are testable.
  struct EpisodeSetup {
    PlayerId learner = 0;
    std::shared_ptr<const PolicySnapshot> advantage_snapshot;  // j
    std::shared_ptr<const PolicySnapshot> behavior_snapshot;
    bool used_latest = false;
    CandidatePolicy candidate;
  };
  EpisodeSetup draw_episode_setup();

  // The modulated behavior of one candidate on top of a snapshot, for one
  // seat.
  BehaviorFn candidate_behavior(std::shared_ptr<const PolicySnapshot> snap,
                                const CandidatePolicy& candidate) const;
  // pi^j: the snapshot's mean-regret policy (any seat).
  BehaviorFn snapshot_behavior(std::shared_ptr<const PolicySnapshot> snap) const;

  std::shared_ptr<const PolicySnapshot> latest_snapshot() const {
    return latest_snapshot_;
  }

 private:
  std::shared_ptr<const PolicySnapshot> make_snapshot(int epoch) const;
  std::shared_ptr<const PolicySnapshot> draw_reservoir_snapshot();
  void evaluate_nash_conv(EpochMetrics& m) const;

  std::shared_ptr<const Game> game_;
  const GameTree* tree_;
  ArmacConfig config_;
  GameDescriptor desc_;
  Rng rng_;

  std::unique_ptr<Regressor> w_head_, avg_head_, critic_;
  std::unique_ptr<Regressor> epoch_w_;  // frozen pi^t provider
  std::shared_ptr<const PolicySnapshot> init_snapshot_;  // theta^0 fallback
  std::shared_ptr<const PolicySnapshot> latest_snapshot_;
  PolicyReservoir reservoir_;
  ReplayBuffer replay_;

  std::vector<CandidatePolicy> candidates_;
  std::vector<double> candidate_returns_;
  int primary_candidate_ = 0;

  PlayerId next_learner_ = 0;
  uint64_t episodes_played_ = 0;
  uint64_t acting_steps_ = 0;
  int64_t first_plus2_episode_ = -1;
  bool warned_empty_replay_ = false;
};

// Adapters between the Regressor interface and the episode evaluators.
CriticFn critic_eval_fn(const Regressor& critic, const GameDescriptor& desc);
StatePolicyFn w_head_policy_fn(const Regressor& w_head,
                               const GameDescriptor& desc);

std::vector<uint8_t> legal_mask(const std::vector<Action>& legal, int width);

}  // namespace armac
