// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace b2v {

NegativeDraw sample_noise(const NoiseDistribution& dist, size_t k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  NegativeDraw draw;
  draw.source = DrawSource::noise;
  draw.items.reserve(k);
  for (size_t i = 0; i < k; ++i) draw.items.push_back(dist.sample(rng));
  return draw;
}

NegativeDraw sample_from_generator(const EmbeddingModel& gen,
                                   std::span<const uint32_t> context, size_t m,
                                   Rng& rng, int threads) {
  const CategoricalDistribution dist =
      conditional_distribution(gen, context, threads);
  std::vector<double> cumsum;
  return sample_from_distribution(dist, m, rng, cumsum);
}

NegativeDraw sample_from_distribution(const CategoricalDistribution& dist,
                                      size_t m, Rng& rng,
                                      std::vector<double>& cumsum) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const size_t n = dist.probs.size();
  cumsum.resize(n);
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    acc += dist.probs[i];
    cumsum[i] = acc;
  }
  const double total = cumsum.back();

  NegativeDraw draw;
  draw.source = DrawSource::generator;
  draw.items.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cumsum.begin(), cumsum.end(), u);
    auto idx = static_cast<size_t>(it - cumsum.begin());
    if (idx >= n) idx = n - 1;
    draw.items.push_back(static_cast<uint32_t>(idx));
  }
  return draw;
}

RewardWeights reward_weights(const EmbeddingModel& disc,
                             const NegativeDraw& draw,
                             std::span<const uint32_t> context, int threads) {
  const CategoricalDistribution dist =
      conditional_distribution(disc, context, threads);
  return reward_weights_from(dist, draw.items);
}

RewardWeights reward_weights_from(const CategoricalDistribution& disc_dist,
                                  std::span<const uint32_t> draw_items) {
  if (draw_items.empty()) throw std::invalid_argument("empty negative draw");
  RewardWeights weights;
  weights.raw.reserve(draw_items.size());
  double sum = 0.0;
  for (uint32_t item : draw_items) {
    const double p = std::clamp(disc_dist.probs[item], kRewardClampEps,
                                1.0 - kRewardClampEps);
    const double r = p / (1.0 - p);
    weights.raw.push_back(r);
    sum += r;
  }
  weights.normalized.resize(weights.raw.size());
  for (size_t i = 0; i < weights.raw.size(); ++i) {
    weights.normalized[i] = weights.raw[i] / sum;
  }
  return weights;
}

}  // namespace b2v
