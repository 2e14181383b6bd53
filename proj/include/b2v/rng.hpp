// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace b2v {

// One splitmix64 step.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives an independent seed from a base seed and up to three path
// components (phase tag, round, position). Used everywhere a sub-stream is
// needed so that replay does not depend on how many draws other phases
// consumed.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0,
                            uint64_t c = 0) {
  uint64_t s = splitmix64(base ^ 0x6a09e667f3bcc909ull);
  s = splitmix64(s ^ a);
  s = splitmix64(s ^ b);
  return splitmix64(s ^ c);
}

// mt19937_64 with hand-rolled value mappings. The standard pins the raw
// engine sequence but not the distributions, so every mapping from engine
// output to a value lives here; seeded runs reproduce across standard
// libraries and platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    assert(n > 0);
    if ((n & (n - 1)) == 0) return engine_() & (n - 1);
    const uint64_t max = std::numeric_limits<uint64_t>::max();
    const uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
    const uint64_t bound = max - rem;        // accept x <= bound
    uint64_t x = engine_();
    while (x > bound) x = engine_();
    return x % n;
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<size_t>(below(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace b2v
