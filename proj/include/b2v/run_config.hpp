// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "b2v/corpus.hpp"
#include "b2v/trainer.hpp"

namespace b2v {

/// Everything one experiment needs: dataset, split, training knobs, and
/// evaluation ks. Serialized as a flat key = value file; saving writes every
/// key explicitly so a frozen config replays bit-for-bit.
struct RunConfig {
  uint32_t config_version = 1;

  std::string dataset_path;
  BasketFormat format = BasketFormat::whitespace;
  bool csv_skip_id = false;

  double test_fraction = 0.2;
  uint64_t split_seed = 13;
  uint64_t instance_seed = 17;  // one-random removal for the test instances

  TrainConfig train;

  std::vector<size_t> eval_ks = {1, 5, 10};
  std::string output_dir = "run_output";

  // Throws config_error on unknown keys, malformed values, or an
  // unsupported version.
  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);

  std::string to_string() const;
  void save(const std::string& path) const;

  // Field-name-prefixed problems; empty when the config is usable.
  std::vector<std::string> validate() const;
};

const char* to_string(BasketFormat format);
const char* to_string(NoiseKind kind);

// FNV-1a 64-bit over a file's bytes; identifies inputs in run manifests.
uint64_t fnv1a64_file(const std::string& path);

}  // namespace b2v
