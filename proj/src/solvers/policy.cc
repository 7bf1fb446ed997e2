#include "armac/solvers/policy.h"

#include <cmath>

namespace armac {

ActionDistribution regret_matching(const std::vector<double>& values) {
  ARMAC_CHECK(!values.empty());
  double positive_sum = 0.0;
  for (double v : values) {
    if (v > 0.0) positive_sum += v;
  }
  ActionDistribution dist(values.size());
  if (positive_sum > 0.0) {
    for (size_t i = 0; i < values.size(); ++i) {
      dist[i] = values[i] > 0.0 ? values[i] / positive_sum : 0.0;
    }
  } else {
    const double u = 1.0 / static_cast<double>(values.size());
    for (double& p : dist) p = u;
  }
  return dist;
}

ActionDistribution epsilon_mix(const ActionDistribution& dist, double eps) {
  ARMAC_CHECK(eps >= 0.0 && eps <= 1.0);
  const double u = 1.0 / static_cast<double>(dist.size());
  ActionDistribution out(dist.size());
  for (size_t i = 0; i < dist.size(); ++i) {
    out[i] = (1.0 - eps) * dist[i] + eps * u;
  }
  return out;
}

bool is_distribution(const ActionDistribution& d, double tol) {
  double sum = 0.0;
  for (double p : d) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
    sum += p;
  }
  return std::fabs(sum - 1.0) <= tol;
}

void PolicyTable::set(const InfoStateKey& key, ActionDistribution dist) {
  entries_[key] = std::move(dist);
}

const ActionDistribution* PolicyTable::find(const InfoStateKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

ActionDistribution PolicyTable::get(const InfoStateKey& key,
                                    int num_legal) const {
  if (const ActionDistribution* d = find(key)) {
    ARMAC_CHECK_MSG(static_cast<int>(d->size()) == num_legal,
                    "policy entry width mismatch");
    return *d;
  }
  return ActionDistribution(num_legal, 1.0 / num_legal);
}

}  // namespace armac
