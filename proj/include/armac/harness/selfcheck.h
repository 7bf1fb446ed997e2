#pragma once

#include <iosfwd>
#include <string>

namespace armac {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Perfect-recall audit plus structural game invariants (legal-action
// consistency, chance probabilities, zero-sum returns) on the four
// enumerable games.
CheckResult check_perfect_recall();

// Policy-sequence equivalence between the exact-enumeration trainer and
// vanilla CFR, sup-norm over states with positive cumulative opponent
// reach.
CheckResult check_regret_advantage_equivalence(int kuhn_epochs,
                                               int leduc_epochs, double tol);

// Tabular-mean conditional-advantage estimate vs its exact value, in
// standard-error units (Kuhn, random snapshots).
CheckResult check_w_unbiasedness(int num_trajectories, double min_fraction,
                                 uint64_t seed);

// Sampled counterfactual values vs exact ones under on-policy sampling.
CheckResult check_sampled_cf_unbiasedness(int episodes, uint64_t seed);

// Analytic gradients vs central finite differences on random nets.
CheckResult check_gradients(int num_configs, double rel_tol, uint64_t seed);

// Runs every suite, prints one pass/fail line each; nonzero on failure.
int run_selfcheck(std::ostream& out);

}  // namespace armac
