// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace b2v {

enum class ModelRole : uint8_t { generator = 0, discriminator = 1 };

const char* to_string(ModelRole role);

/// Parameters of one embedding network: an input table whose rows are
/// averaged into context vectors, and an output table whose rows score
/// candidate items. Two instances of this class form the generator /
/// discriminator pair; they share nothing.
class EmbeddingModel {
 public:
  EmbeddingModel(size_t catalog_size, size_t dim, ModelRole role);

  // Entries i.i.d. uniform in [-scale/dim, +scale/dim], deterministic under
  // the seed. The input table is filled before the output table.
  static EmbeddingModel random(size_t catalog_size, size_t dim, uint64_t seed,
                               double scale, ModelRole role);

  size_t catalog_size() const { return catalog_size_; }
  size_t dim() const { return dim_; }
  ModelRole role() const { return role_; }
  void set_role(ModelRole role) { role_ = role; }

  std::span<double> input_row(uint32_t item) {
    return {input_.data() + size_t(item) * dim_, dim_};
  }
  std::span<const double> input_row(uint32_t item) const {
    return {input_.data() + size_t(item) * dim_, dim_};
  }
  std::span<double> output_row(uint32_t item) {
    return {output_.data() + size_t(item) * dim_, dim_};
  }
  std::span<const double> output_row(uint32_t item) const {
    return {output_.data() + size_t(item) * dim_, dim_};
  }

  std::vector<double>& input() { return input_; }
  const std::vector<double>& input() const { return input_; }
  std::vector<double>& output() { return output_; }
  const std::vector<double>& output() const { return output_; }

  bool all_finite() const;

 private:
  size_t catalog_size_;
  size_t dim_;
  ModelRole role_;
  std::vector<double> input_;   // row-major catalog_size x dim
  std::vector<double> output_;  // row-major catalog_size x dim
};

/// Mean of the input-table rows of the context items.
struct ContextVector {
  std::vector<double> values;
  size_t source_size = 0;
};

// Rows are accumulated in ascending index order so the result is invariant
// under permutations of the context. Throws on an empty context.
ContextVector context_embedding(const EmbeddingModel& model,
                                std::span<const uint32_t> context);

// Inner product of the item's output row with the context vector.
double score(const EmbeddingModel& model, const ContextVector& ctx,
             uint32_t item);

/// Full conditional distribution over the catalog given a context.
struct CategoricalDistribution {
  std::vector<double> probs;
  std::vector<double> log_probs;
  double log_normalizer = 0.0;  // log sum exp of the raw scores
};

CategoricalDistribution conditional_distribution(
    const EmbeddingModel& model, std::span<const uint32_t> context,
    int threads = 1);

// Same, writing into an existing distribution to avoid reallocation in hot
// loops.
void conditional_distribution_into(const EmbeddingModel& model,
                                   const ContextVector& ctx,
                                   CategoricalDistribution& out,
                                   int threads = 1);

}  // namespace b2v
