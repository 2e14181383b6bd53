// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "b2v/catalog.hpp"
#include "b2v/model.hpp"

namespace b2v {

// Model snapshot file, all little-endian:
//
//   offset  size  field
//   0       8     magic "B2VEMBED"
//   8       4     format version (currently 1)
//   12      1     role: 0 generator, 1 discriminator
//   13      3     reserved, zero
//   16      8     catalog size |Z|
//   24      8     embedding dim
//   32      ...   input table, |Z| x dim float64, row-major
//   ...     ...   output table, |Z| x dim float64, row-major
//   ...     ...   catalog items: per item a u32 byte length + UTF-8 bytes
//
// The same layout is documented in the README and pinned by tests.

inline constexpr char kSnapshotMagic[8] = {'B', '2', 'V', 'E',
                                           'M', 'B', 'E', 'D'};
inline constexpr uint32_t kSnapshotVersion = 1;

void save_model(const EmbeddingModel& model, const Catalog& catalog,
                const std::string& path);

struct LoadedModel {
  EmbeddingModel model;
  std::shared_ptr<const Catalog> catalog;
};

LoadedModel load_model(const std::string& path);

}  // namespace b2v
