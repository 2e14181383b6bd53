// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "b2v/catalog.hpp"
#include "b2v/rng.hpp"

namespace b2v {

/// One transaction: a sequence of catalog indices. Duplicates are kept as
/// ingested; they are collapsed when training instances are built.
using Basket = std::vector<uint32_t>;

struct BasketDataset {
  std::vector<Basket> baskets;
  std::shared_ptr<const Catalog> catalog;

  size_t catalog_size() const { return catalog ? catalog->size() : 0; }
};

enum class BasketFormat { whitespace, csv };

struct ParseOptions {
  BasketFormat format = BasketFormat::whitespace;
  // CSV files sometimes carry a per-line transaction id in the first column.
  bool skip_id_column = false;
};

struct ParseReport {
  BasketDataset dataset;
  size_t malformed_lines = 0;  // non-empty lines with zero tokens, skipped
};

// One basket per non-empty line. Throws data_error on an empty dataset or a
// catalog with fewer than two items.
ParseReport parse_basket_file(std::istream& in, const ParseOptions& options);
ParseReport parse_basket_path(const std::string& path,
                              const ParseOptions& options);

struct SplitResult {
  BasketDataset train;
  BasketDataset test;
  // Positions in the input dataset, ascending. Both halves share the input
  // catalog.
  std::vector<uint32_t> train_indices;
  std::vector<uint32_t> test_indices;
};

// Seed-deterministic partition at basket granularity. The test half gets
// round(test_fraction * n) baskets, clamped so both halves are non-empty.
SplitResult split_train_test(const BasketDataset& dataset,
                             double test_fraction, uint64_t seed);

/// (context, target) pair: the basket's unique items with the target removed.
struct TrainingInstance {
  std::vector<uint32_t> context;
  uint32_t target = 0;
  uint32_t basket_index = 0;
};

enum class InstanceMode { all_positions, one_random };

struct InstanceSet {
  std::vector<TrainingInstance> instances;
  size_t skipped_singletons = 0;  // baskets with one unique item
};

// Baskets are collapsed to their unique items (first-seen order) before
// instances are cut, so a context never contains its target. `one_random`
// removes one seed-deterministic item per basket; `all_positions` emits one
// instance per unique item. The seed is unused in all_positions mode.
InstanceSet make_instances(const BasketDataset& dataset, InstanceMode mode,
                           uint64_t seed);

enum class NoiseKind { uniform, unigram };

/// Static distribution over the catalog for drawing negatives. Sampling goes
/// through a Walker alias table, built once, O(1) per draw.
class NoiseDistribution {
 public:
  // `probs` must be non-negative with positive total mass; it is normalized
  // exactly on construction.
  static NoiseDistribution from_probs(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  double prob(uint32_t item) const { return probs_[item]; }
  size_t size() const { return probs_.size(); }

  uint32_t sample(Rng& rng) const;

 private:
  std::vector<double> probs_;
  std::vector<double> accept_;
  std::vector<uint32_t> alias_;
};

// uniform: every item 1/|Z|. unigram: mass proportional to
// count(item)^power over training occurrences; unseen items get zero mass.
NoiseDistribution build_noise_distribution(const BasketDataset& train,
                                           NoiseKind kind, double power);

}  // namespace b2v
