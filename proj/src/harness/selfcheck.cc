#include "armac/harness/selfcheck.h"

#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "armac/approx/regressor.h"
#include "armac/games/registry.h"
#include "armac/sampling/outcome_sampling.h"
#include "armac/solvers/cfr.h"
#include "armac/trainer/exact_armac.h"
#include "armac/trainer/unbiasedness.h"

namespace armac {

namespace {

// Depth-first audit: every history in an information state must share the
// acting player's exact action-observation sequence.
void audit_game(const Game& game, std::string& errors) {
  const int n = game.descriptor().num_players;
  std::map<InfoStateKey, std::string> sequences;

  struct Frame {
    std::unique_ptr<State> state;
    std::vector<std::string> aoh;  // per player
  };
  std::vector<Frame> stack;
  stack.push_back({game.new_initial_state(), std::vector<std::string>(n)});

  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    State& state = *frame.state;
    if (state.is_terminal()) {
      if (game.descriptor().zero_sum) {
        double sum = 0.0;
        for (double u : state.returns()) sum += u;
        if (std::fabs(sum) > 1e-9) {
          errors += game.descriptor().name + ": non-zero-sum terminal; ";
          return;
        }
      }
      continue;
    }
    if (state.is_chance()) {
      double total = 0.0;
      for (const auto& [a, p] : state.chance_outcomes()) {
        total += p;
        stack.push_back({state.child(a), frame.aoh});
      }
      if (std::fabs(total - 1.0) > 1e-12) {
        errors += game.descriptor().name + ": chance probs sum != 1; ";
        return;
      }
      continue;
    }
    const PlayerId p = state.current_player();
    const InfoStateKey key = state.info_state_key(p);
    std::string aoh_here = frame.aoh[p] + "|" + key.bytes;
    auto [it, inserted] = sequences.emplace(key, aoh_here);
    if (!inserted && it->second != aoh_here) {
      errors += game.descriptor().name + ": perfect recall violated at " +
                hex_encode(key.bytes) + "; ";
      return;
    }
    for (Action a : state.legal_actions()) {
      Frame child{state.child(a), frame.aoh};
      child.aoh[p] = aoh_here + "," + std::to_string(a);
      stack.push_back(std::move(child));
    }
  }
}

}  // namespace

CheckResult check_perfect_recall() {
  CheckResult result{"perfect_recall_audit", true, ""};
  std::string errors;
  for (const std::string& id : {"kuhn", "leduc", "liars_dice", "goofspiel5"}) {
    const auto game = make_game(id);
    audit_game(*game, errors);
    // Legal-action consistency within information states is enforced while
    // interning states during tree construction.
    GameTree::build(*game);
  }
  if (!errors.empty()) {
    result.pass = false;
    result.detail = errors;
  } else {
    result.detail = "4 games audited";
  }
  return result;
}

CheckResult check_regret_advantage_equivalence(int kuhn_epochs,
                                               int leduc_epochs, double tol) {
  CheckResult result{"regret_advantage_equivalence", true, ""};
  double worst = 0.0;
  for (const auto& [id, epochs] :
       std::initializer_list<std::pair<const char*, int>>{
           {"kuhn", kuhn_epochs}, {"leduc", leduc_epochs}}) {
    const auto game = make_game(id);
    const GameTree tree = GameTree::build(*game);
    CfrSolver cfr(tree);
    ExactArmacTrainer exact(tree);
    for (int t = 0; t < epochs; ++t) {
      cfr.iterate();
      exact.epoch();
      const LocalPolicy a = cfr.current_local();
      const LocalPolicy b = exact.current_local();
      for (int s = 0; s < tree.num_info_states(); ++s) {
        if (exact.cumulative_opponent_reach()[s] <= 0.0) continue;
        for (size_t k = 0; k < a[s].size(); ++k) {
          worst = std::max(worst, std::fabs(a[s][k] - b[s][k]));
        }
      }
      if (worst >= tol) break;
    }
  }
  std::ostringstream os;
  os << "max policy deviation " << worst;
  result.detail = os.str();
  result.pass = worst < tol;
  return result;
}

CheckResult check_w_unbiasedness(int num_trajectories, double min_fraction,
                                 uint64_t seed) {
  CheckResult result{"w_estimate_unbiasedness", true, ""};
  const auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  Rng rng(seed);

  // Three random full-support snapshots.
  SnapshotSequence snapshots;
  for (int j = 0; j < 3; ++j) {
    LocalPolicy policy(tree.num_info_states());
    for (int s = 0; s < tree.num_info_states(); ++s) {
      const size_t n = tree.info_state(s).legal.size();
      policy[s].resize(n);
      double sum = 0.0;
      for (auto& p : policy[s]) {
        p = 0.05 + rng.next_double();
        sum += p;
      }
      for (auto& p : policy[s]) p /= sum;
    }
    snapshots.push_back(std::move(policy));
  }

  BehaviorFn uniform = [](const State& state) {
    const size_t n = state.legal_actions().size();
    return ActionDistribution(n, 1.0 / n);
  };

  double min_frac = 1.0;
  uint64_t pairs = 0;
  for (PlayerId p = 0; p < 2; ++p) {
    const auto report = unbiasedness_harness(*game, tree, snapshots, p,
                                             num_trajectories, uniform, rng);
    min_frac = std::min(min_frac, report.fraction_within_3se);
    pairs += report.visited_pairs;
  }
  std::ostringstream os;
  os << "z-score coverage " << min_frac << " over " << pairs << " pairs";
  result.detail = os.str();
  result.pass = min_frac >= min_fraction;
  return result;
}

CheckResult check_sampled_cf_unbiasedness(int episodes, uint64_t seed) {
  CheckResult result{"sampled_cf_unbiasedness", true, ""};
  const auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);

  // On-policy sampling under the uniform joint policy.
  LocalPolicy uniform(tree.num_info_states());
  for (int s = 0; s < tree.num_info_states(); ++s) {
    const size_t n = tree.info_state(s).legal.size();
    uniform[s].assign(n, 1.0 / n);
  }
  const PolicyTable table = tree.local_to_table(uniform);
  const BehaviorFn behavior = table_behavior(table);

  struct Welford {
    uint64_t count = 0;
    double mean = 0.0, m2 = 0.0;
    void add(double x) {
      ++count;
      const double d = x - mean;
      mean += d / count;
      m2 += d * (x - mean);
    }
  };

  Rng rng(seed);
  int failures = 0;
  int checked = 0;
  for (PlayerId player = 0; player < 2; ++player) {
    const CFValueReport cf = counterfactual_values(tree, uniform, player);
    std::map<std::pair<InfoStateKey, Action>, Welford> stats;
    for (int e = 0; e < episodes; ++e) {
      const Trajectory traj = sample_episode(*game, behavior, rng, e);
      const SampledCFEstimate est =
          outcome_sampling_estimate(traj, table, player);
      // Every pair gets a sample each episode; off-trajectory pairs get 0.
      for (int s = 0; s < tree.num_info_states(); ++s) {
        const auto& rec = tree.info_state(s);
        if (rec.player != player) continue;
        for (Action a : rec.legal) {
          const auto it = est.entries.find({rec.key, a});
          stats[{rec.key, a}].add(it == est.entries.end() ? 0.0 : it->second);
        }
      }
    }
    for (int s = 0; s < tree.num_info_states(); ++s) {
      const auto& rec = tree.info_state(s);
      if (rec.player != player) continue;
      for (size_t k = 0; k < rec.legal.size(); ++k) {
        const Welford& w = stats.at({rec.key, rec.legal[k]});
        const double se =
            std::sqrt(w.m2 / (w.count - 1)) / std::sqrt(w.count);
        const double diff = std::fabs(w.mean - cf.q_c[s][k]);
        ++checked;
        if (se > 0.0 ? diff > 3.0 * se : diff > 1e-9) ++failures;
      }
    }
  }
  std::ostringstream os;
  os << failures << " of " << checked << " pairs outside 3 standard errors";
  result.detail = os.str();
  result.pass = failures == 0;
  return result;
}

CheckResult check_gradients(int num_configs, double rel_tol, uint64_t seed) {
  CheckResult result{"gradient_check", true, ""};
  Rng rng(seed);
  double worst = 0.0;
  for (int c = 0; c < num_configs; ++c) {
    RegressorSpec spec;
    spec.kind = RegressorKind::kFeedforward;
    spec.input_width = 2 + static_cast<int>(rng.next_index(5));
    spec.output_width = 2 + static_cast<int>(rng.next_index(4));
    spec.hidden = {3 + static_cast<int>(rng.next_index(4)),
                   3 + static_cast<int>(rng.next_index(4))};
    FeedforwardNet net(spec, rng.next_u64());
    // Perturb the zero output layer so classification gradients are
    // exercised away from the uniform point.
    for (auto& v : net.mutable_parameters().values) {
      v += 0.05 * rng.next_gaussian();
    }

    Batch batch;
    const int batch_size = 1 + static_cast<int>(rng.next_index(4));
    for (int b = 0; b < batch_size; ++b) {
      Example ex;
      ex.features.resize(spec.input_width);
      for (auto& f : ex.features) f = rng.next_gaussian();
      ex.target.assign(spec.output_width, 0.0);
      ex.mask.assign(spec.output_width, 0);
      int masked = 0;
      for (int o = 0; o < spec.output_width; ++o) {
        ex.mask[o] = rng.next_double() < 0.7;
        masked += ex.mask[o];
      }
      if (masked == 0) ex.mask[0] = 1;
      double sum = 0.0;
      for (int o = 0; o < spec.output_width; ++o) {
        if (!ex.mask[o]) continue;
        ex.target[o] = rng.next_double();
        sum += ex.target[o];
      }
      const bool classification = c % 2 == 1;
      if (classification) {
        for (int o = 0; o < spec.output_width; ++o) {
          if (ex.mask[o]) ex.target[o] /= sum;
        }
      } else {
        for (int o = 0; o < spec.output_width; ++o) {
          if (ex.mask[o]) ex.target[o] = rng.next_gaussian();
        }
      }
      ex.weight = 0.5 + rng.next_double();
      batch.push_back(std::move(ex));
    }

    const auto kind = c % 2 == 1 ? FeedforwardNet::Loss::kClassification
                                 : FeedforwardNet::Loss::kRegression;
    std::vector<double> grad;
    net.loss_and_grad(batch, kind, &grad);

    auto& params = net.mutable_parameters().values;
    const double h = 1e-6;
    for (size_t i = 0; i < params.size(); ++i) {
      const double keep = params[i];
      params[i] = keep + h;
      const double up = net.loss_and_grad(batch, kind, nullptr);
      params[i] = keep - h;
      const double down = net.loss_and_grad(batch, kind, nullptr);
      params[i] = keep;
      const double fd = (up - down) / (2.0 * h);
      const double err = std::fabs(grad[i] - fd) /
                         std::max({std::fabs(grad[i]), std::fabs(fd), 1.0});
      worst = std::max(worst, err);
    }
  }
  std::ostringstream os;
  os << "max relative gradient error " << worst << " over " << num_configs
     << " configs";
  result.detail = os.str();
  result.pass = worst < rel_tol;
  return result;
}

int run_selfcheck(std::ostream& out) {
  const CheckResult results[] = {
      check_perfect_recall(),
      check_regret_advantage_equivalence(200, 25, 1e-9),
      check_w_unbiasedness(100000, 0.99, 7),
      check_sampled_cf_unbiasedness(100000, 11),
      check_gradients(20, 1e-4, 13),
  };
  int failures = 0;
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (" << r.detail
        << ")\n";
    failures += !r.pass;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace armac
