// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "b2v/errors.hpp"
#include "b2v/kernels.hpp"

namespace b2v {

double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::vector<double>& SparseGradient::row(MatrixTag tag, uint32_t index) {
  for (auto& r : rows) {
    if (r.tag == tag && r.row == index) return r.values;
  }
  rows.push_back({tag, index, std::vector<double>(dim, 0.0)});
  return rows.back().values;
}

void SparseGradient::scale(double factor) {
  for (auto& r : rows) {
    for (double& v : r.values) v *= factor;
  }
  for (double& c : outer_coeffs) c *= factor;
}

void SparseGradient::add_scaled(const SparseGradient& other, double factor) {
  for (const auto& r : other.rows) {
    auto& mine = row(r.tag, r.row);
    for (size_t d = 0; d < mine.size(); ++d) mine[d] += factor * r.values[d];
  }
  if (other.has_outer()) {
    if (has_outer()) {
      throw std::logic_error("cannot merge two rank-one gradient terms");
    }
    outer_direction = other.outer_direction;
    outer_coeffs.resize(other.outer_coeffs.size());
    for (size_t i = 0; i < outer_coeffs.size(); ++i) {
      outer_coeffs[i] = factor * other.outer_coeffs[i];
    }
  }
}

std::vector<double> SparseGradient::materialized_row(MatrixTag tag,
                                                     uint32_t index) const {
  std::vector<double> out(dim, 0.0);
  for (const auto& r : rows) {
    if (r.tag == tag && r.row == index) {
      for (size_t d = 0; d < dim; ++d) out[d] += r.values[d];
    }
  }
  if (tag == MatrixTag::output && has_outer()) {
    const double c = outer_coeffs[index];
    for (size_t d = 0; d < dim; ++d) out[d] += c * outer_direction[d];
  }
  return out;
}

bool SparseGradient::all_finite() const {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
  };
  for (const auto& r : rows) {
    if (!finite(r.values)) return false;
  }
  return finite(outer_coeffs) && finite(outer_direction);
}

namespace {

// Shared core of the sigmoid-contrast objectives:
//   log s(s_z - off_z) + sum_i log s(-(s_i - off_i))
// Offsets are zero for plain negative sampling and log(k * q) for NCE.
LossResult sigmoid_contrast(const EmbeddingModel& model,
                            const TrainingInstance& instance,
                            std::span<const uint32_t> negatives,
                            double target_offset,
                            std::span<const double> negative_offsets) {
  const size_t dim = model.dim();
  const ContextVector ctx = context_embedding(model, instance.context);

  LossResult result;
  result.gradient.dim = dim;
  auto& grad = result.gradient;

  std::vector<double> grad_ctx(dim, 0.0);

  const double s_z = score(model, ctx, instance.target);
  const double delta_z = s_z - target_offset;
  result.loss.positive = log_sigmoid(delta_z);
  {
    const double c = sigmoid(-delta_z);  // d objective / d s_z
    auto& row = grad.row(MatrixTag::output, instance.target);
    const auto out_z = model.output_row(instance.target);
    for (size_t d = 0; d < dim; ++d) {
      row[d] += c * ctx.values[d];
      grad_ctx[d] += c * out_z[d];
    }
  }

  for (size_t i = 0; i < negatives.size(); ++i) {
    const uint32_t item = negatives[i];
    const double offset = negative_offsets.empty() ? 0.0 : negative_offsets[i];
    const double delta = score(model, ctx, item) - offset;
    result.loss.negative_sum += log_sigmoid(-delta);
    const double c = -sigmoid(delta);
    auto& row = grad.row(MatrixTag::output, item);
    const auto out_n = model.output_row(item);
    for (size_t d = 0; d < dim; ++d) {
      row[d] += c * ctx.values[d];
      grad_ctx[d] += c * out_n[d];
    }
  }

  result.loss.value = result.loss.positive + result.loss.negative_sum;

  const double inv = 1.0 / double(ctx.source_size);
  for (uint32_t item : instance.context) {
    auto& row = grad.row(MatrixTag::input, item);
    for (size_t d = 0; d < dim; ++d) row[d] += inv * grad_ctx[d];
  }
  return result;
}

}  // namespace

LossResult neg_loss(const EmbeddingModel& model,
                    const TrainingInstance& instance,
                    const NegativeDraw& negatives) {
  if (negatives.source != DrawSource::noise) {
    throw std::invalid_argument("neg_loss expects noise-drawn negatives");
  }
  return sigmoid_contrast(model, instance, negatives.items, 0.0, {});
}

LossResult nce_loss(const EmbeddingModel& model,
                    const TrainingInstance& instance,
                    const NegativeDraw& negatives,
                    const NoiseDistribution& noise) {
  const double k = double(negatives.count());
  const double q_z = noise.prob(instance.target);
  if (!(q_z > 0.0)) throw data_error("nce requires noise support");
  std::vector<double> offsets;
  offsets.reserve(negatives.count());
  for (uint32_t item : negatives.items) {
    const double q = noise.prob(item);
    if (!(q > 0.0)) throw data_error("nce requires noise support");
    offsets.push_back(std::log(k * q));
  }
  return sigmoid_contrast(model, instance, negatives.items, std::log(k * q_z),
                          offsets);
}

LossResult adversarial_disc_loss(const EmbeddingModel& disc,
                                 const TrainingInstance& instance,
                                 const NegativeDraw& gen_negatives) {
  if (gen_negatives.source != DrawSource::generator) {
    throw std::invalid_argument(
        "adversarial_disc_loss expects generator-drawn negatives");
  }
  return sigmoid_contrast(disc, instance, gen_negatives.items, 0.0, {});
}

LossResult reward_gen_loss_with(const EmbeddingModel& gen,
                                const CategoricalDistribution& gen_dist,
                                const ContextVector& ctx,
                                const RewardWeights& weights,
                                const NegativeDraw& draws,
                                const TrainingInstance& instance,
                                int threads) {
  if (draws.count() < 1) throw std::invalid_argument("m must be >= 1");
  const size_t dim = gen.dim();
  const size_t catalog = gen.catalog_size();

  LossResult result;
  auto& grad = result.gradient;
  grad.dim = dim;

  // Objective: sum_i w_i log P_G(O_i | C) with stop-gradient weights.
  for (size_t i = 0; i < draws.count(); ++i) {
    result.loss.adversarial +=
        weights.normalized[i] * gen_dist.log_probs[draws.items[i]];
  }
  result.loss.value = result.loss.adversarial;

  // d objective / d score_j = a_j - P_j with a_j the summed weights of the
  // draws that hit j. Every output row moves by (a_j - P_j) * ctx, a rank-one
  // update over the whole table.
  grad.outer_coeffs.resize(catalog);
  for (size_t j = 0; j < catalog; ++j) grad.outer_coeffs[j] = -gen_dist.probs[j];
  for (size_t i = 0; i < draws.count(); ++i) {
    grad.outer_coeffs[draws.items[i]] += weights.normalized[i];
  }
  grad.outer_direction = ctx.values;

  // Context side: sum_i w_i W_out[O_i] - sum_j P_j W_out[j], split evenly
  // over the context items.
  std::vector<double> grad_ctx(dim, 0.0);
  kernels::weighted_rowsum(gen.output().data(), catalog, dim,
                           gen_dist.probs.data(), grad_ctx.data(), threads);
  for (double& v : grad_ctx) v = -v;
  for (size_t i = 0; i < draws.count(); ++i) {
    const auto row = gen.output_row(draws.items[i]);
    const double w = weights.normalized[i];
    for (size_t d = 0; d < dim; ++d) grad_ctx[d] += w * row[d];
  }
  const double inv = 1.0 / double(ctx.source_size);
  for (uint32_t item : instance.context) {
    auto& row = grad.row(MatrixTag::input, item);
    for (size_t d = 0; d < dim; ++d) row[d] += inv * grad_ctx[d];
  }
  return result;
}

LossResult reward_gen_loss(const EmbeddingModel& gen,
                           const EmbeddingModel& disc,
                           const TrainingInstance& instance,
                           const NegativeDraw& draws, int threads) {
  if (draws.source != DrawSource::generator) {
    throw std::invalid_argument(
        "reward_gen_loss expects generator-drawn samples");
  }
  const ContextVector ctx = context_embedding(gen, instance.context);
  CategoricalDistribution gen_dist;
  conditional_distribution_into(gen, ctx, gen_dist, threads);
  const RewardWeights weights =
      reward_weights(disc, draws, instance.context, threads);
  return reward_gen_loss_with(gen, gen_dist, ctx, weights, draws, instance,
                              threads);
}

LossResult mixed_gen_loss_with(const EmbeddingModel& gen,
                               const CategoricalDistribution& gen_dist,
                               const ContextVector& ctx,
                               const RewardWeights& weights,
                               const NegativeDraw& gen_draws,
                               const NegativeDraw& noise_draws,
                               const TrainingInstance& instance, double mix,
                               int threads) {
  LossResult reward = reward_gen_loss_with(gen, gen_dist, ctx, weights,
                                           gen_draws, instance, threads);
  LossResult likelihood =
      sigmoid_contrast(gen, instance, noise_draws.items, 0.0, {});

  LossResult result;
  result.gradient.dim = gen.dim();
  result.gradient.add_scaled(reward.gradient, mix);
  result.gradient.add_scaled(likelihood.gradient, 1.0 - mix);

  result.loss.adversarial = reward.loss.adversarial;
  result.loss.mle = likelihood.loss.value;
  result.loss.positive = likelihood.loss.positive;
  result.loss.negative_sum = likelihood.loss.negative_sum;
  result.loss.value =
      mix * reward.loss.value + (1.0 - mix) * likelihood.loss.value;
  return result;
}

LossResult mixed_gen_loss(const EmbeddingModel& gen,
                          const EmbeddingModel& disc,
                          const TrainingInstance& instance,
                          const NegativeDraw& gen_draws,
                          const NegativeDraw& noise_draws, double mix,
                          int threads) {
  if (gen_draws.source != DrawSource::generator) {
    throw std::invalid_argument(
        "mixed_gen_loss expects generator-drawn samples");
  }
  if (noise_draws.source != DrawSource::noise) {
    throw std::invalid_argument(
        "mixed_gen_loss expects noise draws for the likelihood half");
  }
  const ContextVector ctx = context_embedding(gen, instance.context);
  CategoricalDistribution gen_dist;
  conditional_distribution_into(gen, ctx, gen_dist, threads);
  const RewardWeights weights =
      reward_weights(disc, gen_draws, instance.context, threads);
  return mixed_gen_loss_with(gen, gen_dist, ctx, weights, gen_draws,
                             noise_draws, instance, mix, threads);
}

}  // namespace b2v
