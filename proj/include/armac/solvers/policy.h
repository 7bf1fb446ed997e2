#pragma once

#include <map>
#include <vector>

#include "armac/games/game.h"

namespace armac {

// Distribution over the legal actions of one information state, in
// ascending legal-action order. Illegal actions implicitly get 0.
using ActionDistribution = std::vector<double>;

// Regret matching (positive-part normalization). Falls back to uniform
// when no component is positive. Total function: any finite input yields a
// valid distribution.
ActionDistribution regret_matching(const std::vector<double>& values);

// (1-eps) * dist + eps * uniform over the same support.
ActionDistribution epsilon_mix(const ActionDistribution& dist, double eps);

bool is_distribution(const ActionDistribution& d, double tol = 1e-9);

// Joint tabular policy: InfoStateKey -> distribution over legal actions.
// Missing states read as uniform, which is the regret-matching fallback.
class PolicyTable {
 public:
  void set(const InfoStateKey& key, ActionDistribution dist);
  const ActionDistribution* find(const InfoStateKey& key) const;
  ActionDistribution get(const InfoStateKey& key, int num_legal) const;

  const std::map<InfoStateKey, ActionDistribution>& entries() const {
    return entries_;
  }
  std::map<InfoStateKey, ActionDistribution>& entries() { return entries_; }
  size_t size() const { return entries_.size(); }

 private:
  std::map<InfoStateKey, ActionDistribution> entries_;
};

}  // namespace armac
