#include "armac/trainer/candidates.h"

#include <sstream>

namespace armac {

std::vector<CandidatePolicy> default_candidates(
    const std::vector<double>& epsilon_grid) {
  std::vector<CandidatePolicy> out;
  out.push_back({CandidateKind::kUniform, 0.0});
  for (double eps : epsilon_grid) {
    out.push_back({CandidateKind::kCurrentRegret, eps});
  }
  for (double eps : epsilon_grid) {
    out.push_back({CandidateKind::kMeanRegret, eps});
  }
  out.push_back({CandidateKind::kAverage, 0.0});
  return out;
}

std::string candidate_name(const CandidatePolicy& c) {
  std::ostringstream os;
  switch (c.kind) {
    case CandidateKind::kUniform:
      return "uniform";
    case CandidateKind::kAverage:
      return "average";
    case CandidateKind::kCurrentRegret:
      os << "current_regret";
      break;
    case CandidateKind::kMeanRegret:
      os << "mean_regret";
      break;
  }
  os << "_e" << c.epsilon;
  return os.str();
}

}  // namespace armac
