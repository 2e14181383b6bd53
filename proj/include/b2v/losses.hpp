// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "b2v/corpus.hpp"
#include "b2v/model.hpp"
#include "b2v/sampling.hpp"

namespace b2v {

// All objectives follow one sign convention: values are quantities to
// MAXIMIZE, and sgd_apply ascends (row += lr * grad).

enum class MatrixTag : uint8_t { input, output };

struct GradientRow {
  MatrixTag tag;
  uint32_t row;
  std::vector<double> values;
};

/// Gradient of one instance's objective. Sigmoid-contrast losses touch only
/// the target, negative, and context rows, carried in `rows`. The
/// full-softmax generator losses additionally touch every output row; that
/// part is rank one, stored as coefficients over the catalog times a shared
/// direction vector.
struct SparseGradient {
  size_t dim = 0;
  std::vector<GradientRow> rows;
  std::vector<double> outer_coeffs;     // per output row; empty when unused
  std::vector<double> outer_direction;  // length dim when outer is active

  bool has_outer() const { return !outer_coeffs.empty(); }

  // Find-or-insert accumulator for a row.
  std::vector<double>& row(MatrixTag tag, uint32_t index);

  void scale(double factor);
  // this += factor * other. The outer part may come from at most one side.
  void add_scaled(const SparseGradient& other, double factor);

  // Total gradient for one row, including the outer contribution. Test and
  // inspection path; training applies the compact form directly.
  std::vector<double> materialized_row(MatrixTag tag, uint32_t index) const;

  bool all_finite() const;
};

struct LossValue {
  double value = 0.0;         // the objective
  double positive = 0.0;      // log sigmoid(score of the true target)
  double negative_sum = 0.0;  // sum of log sigmoid(-score) over negatives
  double adversarial = 0.0;   // reward-weighted generator log-likelihood
  double mle = 0.0;           // likelihood half of the mixed objective
};

struct LossResult {
  LossValue loss;
  SparseGradient gradient;
};

// Negative sampling: log s(w_z.w_C) + sum_k log s(-w_N.w_C) with negatives
// from the static noise distribution.
LossResult neg_loss(const EmbeddingModel& model,
                    const TrainingInstance& instance,
                    const NegativeDraw& negatives);

// Noise contrastive estimation, binary form with k noise samples and a
// self-normalized model: each score is shifted by log(k * noise_prob).
LossResult nce_loss(const EmbeddingModel& model,
                    const TrainingInstance& instance,
                    const NegativeDraw& negatives,
                    const NoiseDistribution& noise);

// Discriminator objective: identical form to neg_loss, but the negatives
// come from the generator. Gradients flow only into `disc`.
LossResult adversarial_disc_loss(const EmbeddingModel& disc,
                                 const TrainingInstance& instance,
                                 const NegativeDraw& gen_negatives);

// Reward-weighted generator objective: sum_i w_i log P_G(O_i | C) with
// stop-gradient weights w_i from the discriminator reward ratio. The
// log-likelihood gradient uses the exact full softmax.
LossResult reward_gen_loss(const EmbeddingModel& gen,
                           const EmbeddingModel& disc,
                           const TrainingInstance& instance,
                           const NegativeDraw& draws, int threads = 1);

// Mixture of the reward-weighted objective and a plain negative-sampling
// likelihood term over uniform noise draws, weighted mix : (1 - mix).
LossResult mixed_gen_loss(const EmbeddingModel& gen,
                          const EmbeddingModel& disc,
                          const TrainingInstance& instance,
                          const NegativeDraw& gen_draws,
                          const NegativeDraw& noise_draws, double mix = 0.5,
                          int threads = 1);

// Hot-path variants taking precomputed pieces, so the trainer can reuse the
// softmax it already needed for sampling. `gen_dist` and `ctx` must belong
// to `gen` and the instance's context.
LossResult reward_gen_loss_with(const EmbeddingModel& gen,
                                const CategoricalDistribution& gen_dist,
                                const ContextVector& ctx,
                                const RewardWeights& weights,
                                const NegativeDraw& draws,
                                const TrainingInstance& instance,
                                int threads = 1);

LossResult mixed_gen_loss_with(const EmbeddingModel& gen,
                               const CategoricalDistribution& gen_dist,
                               const ContextVector& ctx,
                               const RewardWeights& weights,
                               const NegativeDraw& gen_draws,
                               const NegativeDraw& noise_draws,
                               const TrainingInstance& instance,
                               double mix = 0.5, int threads = 1);

double log_sigmoid(double x);
double sigmoid(double x);

}  // namespace b2v
