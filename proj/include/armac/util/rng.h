#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "armac/util/check.h"

namespace armac {

// Small counter-free PRNG (splitmix64 core). We roll our own instead of
// using <random> distributions because their output is implementation
// defined; reproducibility contracts here require identical streams across
// standard libraries and across actor-parallelism settings.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  // Derives an independent stream for a sub-task, e.g. one acting episode.
  // Streams depend only on the key material, never on call order.
  static Rng derive(uint64_t seed, uint64_t a, uint64_t b = 0,
                    uint64_t c = 0) {
    Rng r(seed);
    r.state_ ^= mix(a + 0x6a09e667f3bcc909ULL);
    r.state_ = mix(r.state_ + mix(b + 0xbb67ae8584caa73bULL));
    r.state_ = mix(r.state_ + mix(c + 0x3c6ef372fe94f82bULL));
    return r;
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  uint64_t next_index(uint64_t n) {
    ARMAC_CHECK(n > 0);
    const uint64_t threshold = (~uint64_t{0} - n + 1) % n;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal via Box-Muller (deterministic, no cached spare).
  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Samples an index from an unnormalized non-negative weight vector.
  int next_weighted(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    ARMAC_CHECK_MSG(total > 0.0, "weights must not all be zero");
    double x = next_double() * total;
    for (size_t i = 0; i < weights.size(); ++i) {
      x -= weights[i];
      if (x <= 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace armac
