#include "armac/trainer/armac_trainer.h"

#include <cmath>
#include <set>

#include "armac/solvers/cfr.h"
#include "armac/trainer/exact_armac.h"
#include "doctest.h"
#include "support/tb_fixed_point.h"
#include "support/test_util.h"

using namespace armac;
using armac::testing::random_local;
using armac::testing::uniform_local;

namespace {

ArmacConfig small_config(uint64_t seed) {
  ArmacConfig c;
  c.epochs = 3;
  c.k_act = 64;
  c.k_learn = 10;
  c.batch_episodes = 8;
  c.candidate_eval_episodes = 8;
  c.eval_interval = 0;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("tree backup: lambda 0 truncates to one-step targets") {
  // Two-step episode with a hand-built critic.
  EpisodeRecord episode;
  episode.learner = 0;
  episode.returns = {1.0, -1.0};
  for (int k = 0; k < 2; ++k) {
    EpisodeStep step;
    step.acting = k;
    step.info_key = {k, std::string(1, static_cast<char>('a' + k))};
    step.history_key = std::string(1, static_cast<char>('h' + k));
    step.legal = {0, 1};
    step.action = k;
    step.action_pos = k;
    step.advantages = {0.0, 0.0};
    step.snapshot_policy = {0.5, 0.5};
    episode.steps.push_back(step);
  }
  CriticFn critic = [](const HistoryKey& key, const std::vector<Action>&) {
    // q[head][action]: head 0 = {1, 3}, head 1 = {-2, 0} at every history.
    (void)key;
    return std::vector<double>{1.0, 3.0, -2.0, 0.0};
  };
  StatePolicyFn pi = [](const InfoStateKey&, const std::vector<Action>&) {
    return ActionDistribution{0.25, 0.75};
  };

  const auto t0 = tree_backup_targets(episode, 2, 0.0, critic, pi);
  // Last decision bootstraps nothing: terminal utility.
  CHECK(t0[1][0] == 1.0);
  CHECK(t0[1][1] == -1.0);
  // One step earlier: v(h_1) = 0.25 * q(a0) + 0.75 * q(a1) per head.
  CHECK(t0[0][0] == doctest::Approx(0.25 * 1.0 + 0.75 * 3.0));
  CHECK(t0[0][1] == doctest::Approx(0.25 * -2.0 + 0.75 * 0.0));
}

TEST_CASE("tree backup: lambda 1 on a deterministic on-policy episode") {
  // When the target policy is deterministic along the taken path, the
  // recursion telescopes to the Monte Carlo return for any critic.
  EpisodeRecord episode;
  episode.learner = 0;
  episode.returns = {2.0, -2.0};
  for (int k = 0; k < 3; ++k) {
    EpisodeStep step;
    step.acting = k % 2;
    step.info_key = {k % 2, std::string(1, static_cast<char>('a' + k))};
    step.history_key = std::string(1, static_cast<char>('h' + k));
    step.legal = {0, 1};
    step.action_pos = k % 2;
    step.action = step.action_pos;
    step.advantages = {0.0, 0.0};
    step.snapshot_policy = {0.5, 0.5};
    episode.steps.push_back(step);
  }
  Rng rng(40);
  std::map<HistoryKey, std::vector<double>> noise;
  CriticFn critic = [&](const HistoryKey& key, const std::vector<Action>&) {
    auto& q = noise[key];
    if (q.empty()) {
      q.resize(4);
      for (auto& v : q) v = rng.next_gaussian();
    }
    return q;
  };
  StatePolicyFn pi = [](const InfoStateKey& key,
                        const std::vector<Action>&) {
    // Deterministic: probability 1 on the action the episode took.
    return key.player == 0 ? ActionDistribution{1.0, 0.0}
                           : ActionDistribution{0.0, 1.0};
  };
  // The episode takes action_pos = acting player's index, matching pi.
  const auto targets = tree_backup_targets(episode, 2, 1.0, critic, pi);
  for (const auto& g : targets) {
    CHECK(g[0] == doctest::Approx(2.0));
    CHECK(g[1] == doctest::Approx(-2.0));
  }
}

TEST_CASE("tree backup fixed point matches exact policy evaluation") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  Rng rng(41);
  const LocalPolicy target = random_local(tree, rng, 0.1);
  for (double lambda : {0.0, 0.5, 1.0}) {
    const double err = armac::testing::tree_backup_fixed_point_error(
        *game, tree, target, lambda, 3000, 25, 42);
    CHECK(err < 1e-3);
  }
}

TEST_CASE("reservoir keeps a uniform sample") {
  // Scaled-down statistical test: capacity 16 over 128 insertions,
  // repeated; per-item retention must sit within 5% of 16/128, and the
  // chi-square statistic must be sane.
  const int capacity = 16;
  const int items = 128;
  const int trials = 40000;
  std::vector<int> retained(items, 0);
  Rng rng(43);
  for (int t = 0; t < trials; ++t) {
    ReservoirSampler<int> reservoir(capacity);
    for (int i = 0; i < items; ++i) reservoir.insert(i, rng);
    REQUIRE(reservoir.slots().size() == static_cast<size_t>(capacity));
    REQUIRE(reservoir.items_seen() == static_cast<uint64_t>(items));
    for (int kept : reservoir.slots()) ++retained[kept];
  }
  const double expect = static_cast<double>(capacity) / items * trials;
  double chi2 = 0.0;
  for (int i = 0; i < items; ++i) {
    REQUIRE(std::fabs(retained[i] - expect) / expect < 0.05);
    chi2 += (retained[i] - expect) * (retained[i] - expect) / expect;
  }
  // 127 degrees of freedom: [80, 190] is a generous 99.9% envelope.
  CHECK(chi2 > 80.0);
  CHECK(chi2 < 190.0);
}

TEST_CASE("replay buffer bounds and reset") {
  ReplayBuffer buffer(4);
  for (int i = 0; i < 10; ++i) {
    EpisodeRecord r;
    r.seed_id = i;
    buffer.add(std::move(r));
  }
  CHECK(buffer.size() == 4);
  CHECK(buffer.at(0).seed_id == 6);  // oldest dropped first
  buffer.clear();
  CHECK(buffer.empty());
}

TEST_CASE("learner alternation covers both players equally") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  ArmacConfig config = small_config(50);
  config.k_act = 100;
  config.candidate_eval_episodes = 0;
  config.eval_episodes_to_replay = false;
  ArmacTrainer trainer(game, &tree, config);
  trainer.begin_epoch(0);
  trainer.act_epoch(0);
  int learners[2] = {0, 0};
  for (size_t i = 0; i < trainer.replay().size(); ++i) {
    ++learners[trainer.replay().at(i).learner];
  }
  CHECK(learners[0] == 50);
  CHECK(learners[1] == 50);
}

TEST_CASE("derive_current_policy applies regret matching to the W head") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  ArmacConfig config = small_config(51);
  ArmacTrainer trainer(game, &tree, config);

  const auto& rec = tree.info_state(0);
  // Fresh heads predict zeros: uniform fallback.
  const auto fresh = trainer.derive_current_policy(rec.key, rec.legal);
  for (double p : fresh) CHECK(p == doctest::Approx(1.0 / rec.legal.size()));
}

TEST_CASE("policy invariance under per-state positive scaling of W") {
  // Scaling a W table by any positive per-state constant cannot change
  // the derived policy.
  Rng rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_index(5));
    std::vector<double> w(n);
    for (auto& v : w) v = rng.next_gaussian();
    const double c = 0.05 + 20.0 * rng.next_double();
    std::vector<double> scaled = w;
    for (auto& v : scaled) v *= c;
    const auto a = regret_matching(w);
    const auto b = regret_matching(scaled);
    for (int k = 0; k < n; ++k) {
      REQUIRE(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("behavior mixes latest and reservoir snapshots evenly") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  ArmacConfig config = small_config(53);
  ArmacTrainer trainer(game, &tree, config);
  // A couple of snapshots so the reservoir side is non-trivial.
  trainer.save_snapshot(0);
  trainer.save_snapshot(1);

  int latest = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    latest += trainer.draw_episode_setup().used_latest;
  }
  CHECK(std::fabs(latest / static_cast<double>(draws) - 0.5) < 0.02);
}

TEST_CASE("candidate selection returns the argmax with stable ties") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  ArmacConfig config = small_config(54);
  ArmacTrainer trainer(game, &tree, config);

  // No evaluation budget: degenerate all-equal case falls back to the
  // first candidate (uniform).
  ArmacConfig no_eval = config;
  no_eval.candidate_eval_episodes = 0;
  ArmacTrainer trainer2(game, &tree, no_eval);
  trainer2.select_candidate(0);
  CHECK(trainer2.primary_candidate() == 0);

  trainer.select_candidate(0);
  const auto& returns = trainer.candidate_returns();
  REQUIRE(returns.size() == trainer.candidates().size());
  int argmax = 0;
  for (size_t c = 1; c < returns.size(); ++c) {
    if (returns[c] > returns[argmax]) argmax = static_cast<int>(c);
  }
  CHECK(trainer.primary_candidate() == argmax);
  CHECK(trainer.candidates().size() == 8);
}

TEST_CASE("ineligible records train the critic but not the heads") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  ArmacConfig config = small_config(55);
  config.candidate_eval_episodes = 8;
  config.eval_episodes_to_replay = true;
  config.k_act = 16;
  ArmacTrainer trainer(game, &tree, config);

  trainer.begin_epoch(0);
  trainer.select_candidate(0);  // fills replay with ineligible records only
  REQUIRE(!trainer.replay().empty());
  for (size_t i = 0; i < trainer.replay().size(); ++i) {
    REQUIRE(!trainer.replay().at(i).head_eligible);
  }
  trainer.learn_epoch(0);
  // Critic saw data; the mean-regret and average heads saw none.
  CHECK(trainer.critic().version() > 0);
  CHECK(trainer.w_head().version() == 0);
  CHECK(trainer.avg_head().version() == 0);

  trainer.act_epoch(0);  // eligible records now present
  trainer.learn_epoch(0);
  CHECK(trainer.w_head().version() > 0);
  CHECK(trainer.avg_head().version() > 0);
}

TEST_CASE("acting covers every kuhn information state") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  ArmacConfig config = small_config(56);
  config.k_act = 10000;
  config.candidate_eval_episodes = 0;
  config.replay_capacity = 20000;
  ArmacTrainer trainer(game, &tree, config);
  trainer.begin_epoch(0);
  trainer.act_epoch(0);

  std::set<InfoStateKey> visited;
  for (size_t i = 0; i < trainer.replay().size(); ++i) {
    for (const auto& step : trainer.replay().at(i).steps) {
      visited.insert(step.info_key);
    }
  }
  CHECK(visited.size() == static_cast<size_t>(tree.num_info_states()));
}

TEST_CASE("run is reproducible across actor parallelism settings") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  ArmacConfig config = small_config(57);
  config.head_kind = RegressorKind::kFeedforward;
  config.hidden = {8, 8};
  config.step_size = 1e-3;
  config.eval_interval = 1;
  config.epochs = 2;

  ArmacConfig threaded = config;
  threaded.num_threads = 4;

  ArmacTrainer a(game, &tree, config);
  ArmacTrainer b(game, &tree, threaded);
  const ArmacRunResult ra = a.run();
  const ArmacRunResult rb = b.run();

  REQUIRE(ra.metrics.size() == rb.metrics.size());
  for (size_t i = 0; i < ra.metrics.size(); ++i) {
    REQUIRE(ra.metrics[i].nash_conv_avg == rb.metrics[i].nash_conv_avg);
    REQUIRE(ra.metrics[i].nash_conv_current ==
            rb.metrics[i].nash_conv_current);
    REQUIRE(ra.metrics[i].candidate_returns ==
            rb.metrics[i].candidate_returns);
    REQUIRE(ra.metrics[i].primary_candidate ==
            rb.metrics[i].primary_candidate);
  }
  REQUIRE(ra.average_policy.entries() == rb.average_policy.entries());
  REQUIRE(ra.current_policy.entries() == rb.current_policy.entries());
}

TEST_CASE("exact mode reproduces the cfr policy sequence (unit-scale)") {
  for (const std::string& id : {"kuhn", "leduc"}) {
    auto game = make_game(id);
    const GameTree tree = GameTree::build(*game);
    CfrSolver cfr(tree);
    ExactArmacTrainer exact(tree);
    const int epochs = id == "kuhn" ? 100 : 10;
    double worst = 0.0;
    for (int t = 0; t < epochs; ++t) {
      cfr.iterate();
      exact.epoch();
      const auto a = cfr.current_local();
      const auto b = exact.current_local();
      for (int s = 0; s < tree.num_info_states(); ++s) {
        if (exact.cumulative_opponent_reach()[s] <= 0.0) continue;
        for (size_t k = 0; k < a[s].size(); ++k) {
          worst = std::max(worst, std::fabs(a[s][k] - b[s][k]));
        }
      }
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("gridworld trainer flags the +2 discovery") {
  auto game = make_game("gridworld");
  ArmacConfig config = small_config(58);
  config.epochs = 4;
  config.k_act = 256;
  config.candidate_eval_episodes = 16;
  ArmacTrainer trainer(game, nullptr, config);
  const ArmacRunResult result = trainer.run();
  // With uniform-heavy early behavior the far corner turns up quickly.
  CHECK(result.first_plus2_episode >= 0);
  CHECK(result.episodes_played > 0);
  CHECK(result.metrics.size() == 4);
}
