// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "b2v/kernels.hpp"
#include "b2v/rng.hpp"

namespace b2v {

const char* to_string(ModelRole role) {
  return role == ModelRole::generator ? "generator" : "discriminator";
}

EmbeddingModel::EmbeddingModel(size_t catalog_size, size_t dim, ModelRole role)
    : catalog_size_(catalog_size),
      dim_(dim),
      role_(role),
      input_(catalog_size * dim, 0.0),
      output_(catalog_size * dim, 0.0) {
  if (catalog_size < 2) throw std::invalid_argument("catalog_size must be >= 2");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
}

EmbeddingModel EmbeddingModel::random(size_t catalog_size, size_t dim,
                                      uint64_t seed, double scale,
                                      ModelRole role) {
  EmbeddingModel model(catalog_size, dim, role);
  const double bound = scale / double(dim);
  Rng rng(seed);
  for (double& v : model.input_) v = rng.uniform(-bound, bound);
  for (double& v : model.output_) v = rng.uniform(-bound, bound);
  return model;
}

bool EmbeddingModel::all_finite() const {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
  };
  return finite(input_) && finite(output_);
}

ContextVector context_embedding(const EmbeddingModel& model,
                                std::span<const uint32_t> context) {
  if (context.empty()) throw std::invalid_argument("empty context");

  std::vector<uint32_t> ordered(context.begin(), context.end());
  std::sort(ordered.begin(), ordered.end());

  ContextVector ctx;
  ctx.source_size = ordered.size();
  ctx.values.assign(model.dim(), 0.0);
  for (uint32_t item : ordered) {
    assert(item < model.catalog_size());
    const auto row = model.input_row(item);
    for (size_t d = 0; d < ctx.values.size(); ++d) ctx.values[d] += row[d];
  }
  const double inv = 1.0 / double(ordered.size());
  for (double& v : ctx.values) v *= inv;
  return ctx;
}

double score(const EmbeddingModel& model, const ContextVector& ctx,
             uint32_t item) {
  assert(item < model.catalog_size());
  return kernels::dot_serial(model.output_row(item).data(), ctx.values.data(),
                             model.dim());
}

CategoricalDistribution conditional_distribution(
    const EmbeddingModel& model, std::span<const uint32_t> context,
    int threads) {
  CategoricalDistribution dist;
  conditional_distribution_into(model, context_embedding(model, context), dist,
                                threads);
  return dist;
}

void conditional_distribution_into(const EmbeddingModel& model,
                                   const ContextVector& ctx,
                                   CategoricalDistribution& out, int threads) {
  const size_t n = model.catalog_size();
  out.probs.resize(n);
  out.log_probs.resize(n);
  // Raw scores land in log_probs; softmax rewrites them in place.
  kernels::row_scores(model.output().data(), n, model.dim(), ctx.values.data(),
                      out.log_probs.data(), threads);
  const auto stats = kernels::softmax(out.log_probs, out.probs, threads);
  out.log_normalizer = stats.log_normalizer;
}

}  // namespace b2v
