#pragma once

#include <string>
#include <vector>

namespace armac {

// The four behavior-modulation families of the adaptive policy selection:
// a random uniform policy, regret matching over the current epoch's
// advantages (critic-based), regret matching over the mean-regret head,
// and the classification-trained average policy. The two regret families
// carry an exploration grid.
enum class CandidateKind { kUniform, kCurrentRegret, kMeanRegret, kAverage };

struct CandidatePolicy {
  CandidateKind kind = CandidateKind::kUniform;
  double epsilon = 0.0;
};

// uniform, current_regret(eps...), mean_regret(eps...), average.
std::vector<CandidatePolicy> default_candidates(
    const std::vector<double>& epsilon_grid);

std::string candidate_name(const CandidatePolicy& c);

}  // namespace armac
