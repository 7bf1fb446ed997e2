#pragma once

#include <deque>
#include <memory>

#include "armac/approx/regressor.h"
#include "armac/sampling/episode.h"
#include "armac/util/rng.h"

namespace armac {

// Frozen epoch-t parameters: the conditional-advantage head, the average
// policy head, and the critic, all deep copies. Immutable after creation.
struct PolicySnapshot {
  int epoch = -1;  // -1 marks the initial parameters theta^0
  std::shared_ptr<const Regressor> w_head;
  std::shared_ptr<const Regressor> avg_head;
  std::shared_ptr<const Regressor> critic;
  uint64_t acting_steps = 0;
  uint64_t seed = 0;
};

// Algorithm-R reservoir: after N >= capacity insertions, each item is
// retained with probability capacity / N.
template <typename T>
class ReservoirSampler {
 public:
  explicit ReservoirSampler(int capacity) : capacity_(capacity) {
    ARMAC_CHECK(capacity > 0);
  }

  void insert(T item, Rng& rng) {
    ++items_seen_;
    if (static_cast<int>(slots_.size()) < capacity_) {
      slots_.push_back(std::move(item));
      return;
    }
    const uint64_t j = rng.next_index(items_seen_);
    if (j < static_cast<uint64_t>(capacity_)) slots_[j] = std::move(item);
  }

  const T& sample(Rng& rng) const {
    ARMAC_CHECK_MSG(!slots_.empty(), "sampling from an empty reservoir");
    return slots_[rng.next_index(slots_.size())];
  }

  bool empty() const { return slots_.empty(); }
  int capacity() const { return capacity_; }
  uint64_t items_seen() const { return items_seen_; }
  const std::vector<T>& slots() const { return slots_; }

 private:
  int capacity_;
  uint64_t items_seen_ = 0;
  std::vector<T> slots_;
};

using PolicyReservoir = ReservoirSampler<std::shared_ptr<const PolicySnapshot>>;

// Bounded episode queue. In the paper-faithful configuration it is cleared
// at every epoch start; when kept across epochs the oldest records fall out
// first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity) : capacity_(capacity) {}

  void add(EpisodeRecord record) {
    if (records_.size() == capacity_) records_.pop_front();
    records_.push_back(std::move(record));
  }
  void clear() { records_.clear(); }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const EpisodeRecord& at(size_t i) const { return records_[i]; }

 private:
  size_t capacity_;
  std::deque<EpisodeRecord> records_;
};

}  // namespace armac
