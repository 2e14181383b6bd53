// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "b2v/errors.hpp"

namespace b2v {

namespace {

void tokenize_whitespace(const std::string& line,
                         std::vector<std::string>& out) {
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
}

void tokenize_csv(const std::string& line, std::vector<std::string>& out) {
  size_t start = 0;
  while (start <= line.size()) {
    size_t end = line.find(',', start);
    if (end == std::string::npos) end = line.size();
    std::string field = line.substr(start, end - start);
    // trim surrounding blanks
    const auto b = field.find_first_not_of(" \t");
    if (b != std::string::npos) {
      const auto e = field.find_last_not_of(" \t");
      out.push_back(field.substr(b, e - b + 1));
    }
    if (end == line.size()) break;
    start = end + 1;
  }
}

}  // namespace

ParseReport parse_basket_file(std::istream& in, const ParseOptions& options) {
  auto catalog = std::make_shared<Catalog>();
  ParseReport report;
  report.dataset.catalog = catalog;

  std::string line;
  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    tokens.clear();
    if (options.format == BasketFormat::whitespace) {
      tokenize_whitespace(line, tokens);
    } else {
      tokenize_csv(line, tokens);
    }
    size_t first = 0;
    if (options.format == BasketFormat::csv && options.skip_id_column &&
        !tokens.empty()) {
      first = 1;
    }
    if (tokens.size() <= first) {
      ++report.malformed_lines;
      continue;
    }

    Basket basket;
    basket.reserve(tokens.size() - first);
    for (size_t i = first; i < tokens.size(); ++i) {
      basket.push_back(catalog->intern(tokens[i]));
    }
    report.dataset.baskets.push_back(std::move(basket));
  }

  if (report.dataset.baskets.empty()) throw data_error("no baskets");
  if (catalog->size() < 2) {
    throw data_error("catalog must contain at least 2 items, got " +
                     std::to_string(catalog->size()));
  }
  return report;
}

ParseReport parse_basket_path(const std::string& path,
                              const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open dataset file: " + path);
  return parse_basket_file(in, options);
}

SplitResult split_train_test(const BasketDataset& dataset,
                             double test_fraction, uint64_t seed) {
  const size_t n = dataset.baskets.size();
  if (n < 2) throw data_error("need at least 2 baskets to split");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw config_error("test_fraction must be in (0, 1)");
  }

  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  rng.shuffle(order);

  auto n_test = static_cast<size_t>(std::llround(test_fraction * double(n)));
  n_test = std::clamp<size_t>(n_test, 1, n - 1);

  SplitResult result;
  result.test_indices.assign(order.begin(), order.begin() + n_test);
  result.train_indices.assign(order.begin() + n_test, order.end());
  std::sort(result.test_indices.begin(), result.test_indices.end());
  std::sort(result.train_indices.begin(), result.train_indices.end());

  result.train.catalog = dataset.catalog;
  result.test.catalog = dataset.catalog;
  result.train.baskets.reserve(result.train_indices.size());
  result.test.baskets.reserve(n_test);
  for (uint32_t i : result.train_indices)
    result.train.baskets.push_back(dataset.baskets[i]);
  for (uint32_t i : result.test_indices)
    result.test.baskets.push_back(dataset.baskets[i]);
  return result;
}

namespace {

// Unique items in first-seen order. Baskets are small; a linear scan beats
// hashing here.
void unique_items(const Basket& basket, std::vector<uint32_t>& out) {
  out.clear();
  for (uint32_t item : basket) {
    if (std::find(out.begin(), out.end(), item) == out.end())
      out.push_back(item);
  }
}

}  // namespace

InstanceSet make_instances(const BasketDataset& dataset, InstanceMode mode,
                           uint64_t seed) {
  InstanceSet set;
  Rng rng(seed);
  std::vector<uint32_t> unique;
  for (size_t b = 0; b < dataset.baskets.size(); ++b) {
    unique_items(dataset.baskets[b], unique);
    if (unique.size() < 2) {
      ++set.skipped_singletons;
      continue;
    }
    const auto basket_index = static_cast<uint32_t>(b);
    if (mode == InstanceMode::one_random) {
      const auto pos = static_cast<size_t>(rng.below(unique.size()));
      TrainingInstance inst;
      inst.target = unique[pos];
      inst.basket_index = basket_index;
      inst.context.reserve(unique.size() - 1);
      for (size_t i = 0; i < unique.size(); ++i) {
        if (i != pos) inst.context.push_back(unique[i]);
      }
      set.instances.push_back(std::move(inst));
    } else {
      for (size_t pos = 0; pos < unique.size(); ++pos) {
        TrainingInstance inst;
        inst.target = unique[pos];
        inst.basket_index = basket_index;
        inst.context.reserve(unique.size() - 1);
        for (size_t i = 0; i < unique.size(); ++i) {
          if (i != pos) inst.context.push_back(unique[i]);
        }
        set.instances.push_back(std::move(inst));
      }
    }
  }
  return set;
}

NoiseDistribution NoiseDistribution::from_probs(std::vector<double> probs) {
  long double total = 0.0L;
  for (double p : probs) {
    if (!(p >= 0.0)) throw config_error("noise probabilities must be >= 0");
    total += p;
  }
  if (!(total > 0.0L)) throw config_error("noise distribution has zero mass");
  for (double& p : probs) p = static_cast<double>(p / total);

  NoiseDistribution dist;
  const size_t n = probs.size();
  dist.probs_ = std::move(probs);
  dist.accept_.assign(n, 1.0);
  dist.alias_.assign(n, 0);

  // Walker/Vose alias construction.
  std::vector<double> scaled(n);
  for (size_t i = 0; i < n; ++i) scaled[i] = dist.probs_[i] * double(n);
  std::vector<uint32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const uint32_t s = small.back();
    small.pop_back();
    const uint32_t l = large.back();
    large.pop_back();
    dist.accept_[s] = scaled[s];
    dist.alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  // Leftovers are within rounding of 1.
  for (uint32_t i : large) dist.accept_[i] = 1.0;
  for (uint32_t i : small) dist.accept_[i] = 1.0;
  return dist;
}

uint32_t NoiseDistribution::sample(Rng& rng) const {
  const auto i = static_cast<uint32_t>(rng.below(probs_.size()));
  return rng.uniform() < accept_[i] ? i : alias_[i];
}

NoiseDistribution build_noise_distribution(const BasketDataset& train,
                                           NoiseKind kind, double power) {
  if (!(power >= 0.0)) throw config_error("noise power must be >= 0");
  const size_t z = train.catalog_size();
  if (z == 0) throw data_error("noise distribution needs a catalog");

  std::vector<double> probs(z, 0.0);
  if (kind == NoiseKind::uniform) {
    std::fill(probs.begin(), probs.end(), 1.0 / double(z));
  } else {
    std::vector<uint64_t> counts(z, 0);
    for (const Basket& basket : train.baskets) {
      for (uint32_t item : basket) ++counts[item];
    }
    for (size_t i = 0; i < z; ++i) {
      probs[i] = counts[i] == 0 ? 0.0 : std::pow(double(counts[i]), power);
    }
  }
  return NoiseDistribution::from_probs(std::move(probs));
}

}  // namespace b2v
