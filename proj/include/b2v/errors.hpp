// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace b2v {

// Bad flags, invalid config fields, unknown config keys. CLI exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable files, empty corpora, catalog mismatches. CLI exit code 3.
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite gradients or parameters during training. CLI exit code 4.
struct divergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace b2v
