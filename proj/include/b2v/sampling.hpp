// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "b2v/corpus.hpp"
#include "b2v/model.hpp"
#include "b2v/rng.hpp"

namespace b2v {

enum class DrawSource : uint8_t { noise, generator };

/// A batch of negatives drawn with replacement from one source.
struct NegativeDraw {
  std::vector<uint32_t> items;
  DrawSource source = DrawSource::noise;

  size_t count() const { return items.size(); }
};

// k i.i.d. draws from the static noise distribution.
NegativeDraw sample_noise(const NoiseDistribution& dist, size_t k, Rng& rng);

// m i.i.d. draws from the generator's conditional softmax. The true target
// is not excluded; collisions are kept.
NegativeDraw sample_from_generator(const EmbeddingModel& gen,
                                   std::span<const uint32_t> context, size_t m,
                                   Rng& rng, int threads = 1);

// Same draw given an already-computed distribution. Cumulative sums go into
// `cumsum` so hot loops can reuse the buffer.
NegativeDraw sample_from_distribution(const CategoricalDistribution& dist,
                                      size_t m, Rng& rng,
                                      std::vector<double>& cumsum);

/// Discriminator reward per drawn item: raw_i = p/(1-p) with
/// p = P_D(item|context) clamped to [eps, 1-eps], and the self-normalized
/// weights raw/sum(raw).
struct RewardWeights {
  std::vector<double> raw;
  std::vector<double> normalized;
};

inline constexpr double kRewardClampEps = 1e-9;

RewardWeights reward_weights(const EmbeddingModel& disc,
                             const NegativeDraw& draw,
                             std::span<const uint32_t> context,
                             int threads = 1);

RewardWeights reward_weights_from(const CategoricalDistribution& disc_dist,
                                  std::span<const uint32_t> draw_items);

}  // namespace b2v
