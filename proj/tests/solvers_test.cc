#include "armac/solvers/cfr.h"

#include <algorithm>

#include "armac/solvers/best_response.h"
#include "doctest.h"
#include "support/test_util.h"

using namespace armac;
using armac::testing::enumerate_terminal_values;
using armac::testing::kuhn_nash_policy;
using armac::testing::random_local;
using armac::testing::uniform_local;

TEST_CASE("regret matching") {
  CHECK(regret_matching({2.0, -1.0, 3.0}) ==
        ActionDistribution{0.4, 0.0, 0.6});
  CHECK(regret_matching({-1.0, -2.0}) == ActionDistribution{0.5, 0.5});
  CHECK(regret_matching({0.0, 0.0, 0.0, 0.0}) ==
        ActionDistribution{0.25, 0.25, 0.25, 0.25});
}

TEST_CASE("regret matching properties: validity and scale invariance") {
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_index(6));
    std::vector<double> values(n);
    for (auto& v : values) v = 4.0 * rng.next_gaussian();
    const ActionDistribution d = regret_matching(values);
    REQUIRE(is_distribution(d));

    const double c = 0.01 + 10.0 * rng.next_double();
    std::vector<double> scaled = values;
    for (auto& v : scaled) v *= c;
    const ActionDistribution d2 = regret_matching(scaled);
    for (int k = 0; k < n; ++k) {
      REQUIRE(d[k] == doctest::Approx(d2[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("epsilon mix") {
  CHECK(epsilon_mix({0.3, 0.7}, 0.0) == ActionDistribution{0.3, 0.7});
  CHECK(epsilon_mix({1.0, 0.0}, 1.0) == ActionDistribution{0.5, 0.5});
  const auto mixed = epsilon_mix({0.8, 0.2}, 0.05);
  CHECK(mixed[0] == doctest::Approx(0.785));
  CHECK(mixed[1] == doctest::Approx(0.215));
}

TEST_CASE("reach probabilities on kuhn") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  const LocalPolicy uniform = uniform_local(tree);
  const ReachReport reach = reach_probabilities(tree, uniform);

  CHECK(reach.joint_reach(tree.root()) == 1.0);
  CHECK(reach.opponent_reach(tree.root(), 0) == 1.0);

  // After the first deal, chance contributes 1/3 to everyone's opponent
  // reach.
  const int after_deal = tree.node(tree.root()).first_child;
  CHECK(reach.chance[after_deal] == doctest::Approx(1.0 / 3.0));
  CHECK(reach.opponent_reach(after_deal, 0) == doctest::Approx(1.0 / 3.0));

  for (size_t id = 0; id < tree.nodes().size(); ++id) {
    const double joint = reach.joint_reach(static_cast<int>(id));
    REQUIRE(joint >= 0.0);
    REQUIRE(joint <= 1.0 + 1e-12);
  }

  // Perfect recall: own reach is constant across the histories of an
  // information state.
  Rng rng(3);
  const LocalPolicy random = random_local(tree, rng);
  const ReachReport r2 = reach_probabilities(tree, random);
  for (const auto& rec : tree.info_states()) {
    for (int id : rec.nodes) {
      REQUIRE(r2.own_reach(id, rec.player) ==
              doctest::Approx(r2.own_reach(rec.nodes[0], rec.player))
                  .epsilon(1e-12));
    }
  }
}

TEST_CASE("expected values match terminal enumeration") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const LocalPolicy policy = random_local(tree, rng);
    const ValueReport values = expected_values(tree, policy);
    const auto oracle =
        enumerate_terminal_values(*game, tree.local_to_table(policy));
    for (int p = 0; p < 2; ++p) {
      REQUIRE(values.value(tree.root(), p) ==
              doctest::Approx(oracle[p]).epsilon(1e-10));
    }
    REQUIRE(values.value(tree.root(), 0) + values.value(tree.root(), 1) ==
            doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("kuhn optimal value is -1/18") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  const PolicyTable nash = kuhn_nash_policy(*game);
  const LocalPolicy local = tree.table_to_local(nash);
  const ValueReport values = expected_values(tree, local);
  CHECK(values.value(tree.root(), 0) ==
        doctest::Approx(-1.0 / 18.0).epsilon(1e-12));
  CHECK(values.value(tree.root(), 1) ==
        doctest::Approx(1.0 / 18.0).epsilon(1e-12));

  // Cross-check via CFR: the average-policy value converges to the same
  // number.
  CfrSolver solver(tree);
  solver.run(20000);
  const ValueReport cfr_values =
      expected_values(tree, solver.average_local());
  CHECK(cfr_values.value(tree.root(), 0) ==
        doctest::Approx(-1.0 / 18.0).epsilon(0.02));
}

TEST_CASE("counterfactual values") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  const LocalPolicy uniform = uniform_local(tree);
  const ValueReport values = expected_values(tree, uniform);
  const ReachReport reach = reach_probabilities(tree, uniform);

  for (PlayerId player = 0; player < 2; ++player) {
    const CFValueReport cf = counterfactual_values(tree, uniform, player);
    for (int s = 0; s < tree.num_info_states(); ++s) {
      const auto& rec = tree.info_state(s);
      if (rec.player != player) continue;

      // v^c = sum_a pi(a) q^c(a)
      double vc = 0.0;
      for (size_t k = 0; k < cf.q_c[s].size(); ++k) {
        vc += uniform[s][k] * cf.q_c[s][k];
      }
      REQUIRE(vc == doctest::Approx(cf.v_c[s]).epsilon(1e-9));

      // v = v^c / beta wherever beta > 0, with v the eta(h|s)-weighted
      // state value.
      REQUIRE(cf.beta[s] > 0.0);
      double joint_mass = 0.0;
      double v_mixed = 0.0;
      for (int id : rec.nodes) {
        joint_mass += reach.joint_reach(id);
        v_mixed += reach.joint_reach(id) * values.value(id, player);
      }
      v_mixed /= joint_mass;
      REQUIRE(v_mixed ==
              doctest::Approx(cf.v_c[s] / cf.beta[s]).epsilon(1e-9));
    }
  }
}

TEST_CASE("counterfactual values: unreachable states have zero mass") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  // Player 1 never bets: player 0's states after a check-bet get zero
  // opponent reach and zero counterfactual value.
  LocalPolicy policy = uniform_local(tree);
  for (int s = 0; s < tree.num_info_states(); ++s) {
    if (tree.info_state(s).player == 1) policy[s] = {1.0, 0.0};
  }
  const CFValueReport cf = counterfactual_values(tree, policy, 0);
  int zero_states = 0;
  for (int s = 0; s < tree.num_info_states(); ++s) {
    if (tree.info_state(s).player != 0) continue;
    if (cf.beta[s] == 0.0) {
      ++zero_states;
      REQUIRE(cf.v_c[s] == 0.0);
      for (double q : cf.q_c[s]) REQUIRE(q == 0.0);
    }
  }
  CHECK(zero_states == 3);  // one "check, bet" state per card
}

TEST_CASE("counterfactual value at a root decision state is the game value") {
  // Goofspiel's root information state holds exactly one history with
  // opponent reach 1.
  auto game = make_game("goofspiel5");
  const GameTree tree = GameTree::build(*game);
  const LocalPolicy uniform = uniform_local(tree);
  const int root_state = tree.node(tree.root()).info_state;
  const CFValueReport cf = counterfactual_values(tree, uniform, 0);
  const ValueReport values = expected_values(tree, uniform);
  CHECK(cf.beta[root_state] == 1.0);
  CHECK(cf.v_c[root_state] ==
        doctest::Approx(values.value(tree.root(), 0)).epsilon(1e-12));
}

TEST_CASE("cfr iteration 1 is uniform") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  CfrSolver solver(tree);
  for (const auto& dist : solver.current_local()) {
    for (double p : dist) REQUIRE(p == doctest::Approx(1.0 / dist.size()));
  }
}

TEST_CASE("cfr converges on kuhn") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  CfrSolver solver(tree);
  solver.run(10000);
  CHECK(nash_conv(tree, solver.average_local()) < 0.01);
}

TEST_CASE("cfr nash_conv trend on kuhn is non-increasing by windows") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  CfrSolver solver(tree);
  std::vector<double> trace;
  for (int t = 0; t < 1000; ++t) {
    solver.iterate();
    if ((t + 1) % 20 == 0) {
      trace.push_back(nash_conv(tree, solver.average_local()));
    }
  }
  // Median over consecutive windows of 5 eval points (100 iterations
  // each) must decrease.
  auto median_of = [&](size_t begin, size_t end) {
    std::vector<double> w(trace.begin() + begin, trace.begin() + end);
    std::sort(w.begin(), w.end());
    return w[w.size() / 2];
  };
  double prev = median_of(0, 5);
  for (size_t w = 1; w + 1 <= trace.size() / 5; ++w) {
    const double cur = median_of(5 * w, 5 * w + 5);
    REQUIRE(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("best response against uniform matches brute force") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  const LocalPolicy uniform = uniform_local(tree);
  const PolicyTable uniform_table = tree.local_to_table(uniform);
  for (PlayerId p = 0; p < 2; ++p) {
    const auto br = best_response(tree, uniform, p);
    const double brute = armac::testing::brute_force_best_response(
        *game, tree, uniform_table, p);
    REQUIRE(br.value == doctest::Approx(brute).epsilon(1e-10));
    // BR can only improve on the policy's own value.
    const ValueReport values = expected_values(tree, uniform);
    REQUIRE(br.value >= values.value(tree.root(), p) - 1e-12);
  }
}

TEST_CASE("best response against the kuhn equilibrium") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  const LocalPolicy nash = tree.table_to_local(kuhn_nash_policy(*game));
  CHECK(best_response(tree, nash, 0).value ==
        doctest::Approx(-1.0 / 18.0).epsilon(1e-6));
  CHECK(best_response(tree, nash, 1).value ==
        doctest::Approx(1.0 / 18.0).epsilon(1e-6));
  CHECK(nash_conv(tree, nash) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("best response grows against a more exploitable opponent") {
  auto game = make_game("leduc");
  const GameTree tree = GameTree::build(*game);
  const LocalPolicy uniform = uniform_local(tree);
  const double br_uniform = best_response(tree, uniform, 0).value;

  // An opponent that always folds when allowed is strictly worse.
  LocalPolicy folder = uniform;
  for (int s = 0; s < tree.num_info_states(); ++s) {
    const auto& rec = tree.info_state(s);
    if (rec.player != 1 || rec.legal[0] != 0) continue;
    folder[s].assign(rec.legal.size(), 0.0);
    folder[s][0] = 1.0;
  }
  const double br_folder = best_response(tree, folder, 0).value;
  CHECK(br_folder > br_uniform);
}

TEST_CASE("nash_conv properties") {
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);

  const LocalPolicy uniform = uniform_local(tree);
  const double nc_uniform = nash_conv(tree, uniform);
  CHECK(nc_uniform > 0.0);
  // Cross-check against the brute-force pure-strategy oracle.
  const PolicyTable uniform_table = tree.local_to_table(uniform);
  double brute = 0.0;
  const ValueReport values = expected_values(tree, uniform);
  for (PlayerId p = 0; p < 2; ++p) {
    brute += armac::testing::brute_force_best_response(*game, tree,
                                                       uniform_table, p) -
             values.value(tree.root(), p);
  }
  CHECK(nc_uniform == doctest::Approx(brute).epsilon(1e-10));

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    REQUIRE(nash_conv(tree, random_local(tree, rng)) >= -1e-9);
  }
}
