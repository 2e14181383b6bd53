// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace b2v {

/// Bidirectional map between external item identifiers and dense indices.
/// Indices are assigned in first-seen order, so identical input yields an
/// identical catalog.
class Catalog {
 public:
  // Returns the index of `token`, interning it if unseen.
  uint32_t intern(const std::string& token) {
    auto it = index_.find(token);
    if (it != index_.end()) return it->second;
    const auto idx = static_cast<uint32_t>(items_.size());
    items_.push_back(token);
    index_.emplace(items_.back(), idx);
    return idx;
  }

  std::optional<uint32_t> find(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& item(uint32_t index) const { return items_.at(index); }

  size_t size() const { return items_.size(); }

  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, uint32_t> index_;
};

}  // namespace b2v
