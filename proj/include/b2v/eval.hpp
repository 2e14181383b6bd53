// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "b2v/corpus.hpp"
#include "b2v/model.hpp"

namespace b2v {

struct PercentileRankResult {
  double pr = 0.0;    // percent; ties count in the target's favor
  uint32_t rank = 0;  // 1 + number of strictly greater scores
};

// PR = |{j : score[target] >= score[j]}| / |Z| * 100, the target included.
PercentileRankResult percentile_rank(std::span<const double> scores,
                                     uint32_t target);

struct EvalReport {
  struct InstanceRecord {
    uint32_t id = 0;      // position in the evaluated instance list
    uint32_t basket = 0;  // basket index within the evaluated dataset
    double pr = 0.0;
    uint32_t rank = 0;
  };

  std::string scorer;  // "generator" or "discriminator"
  size_t n_instances = 0;
  double mpr = 0.0;
  std::vector<std::pair<size_t, double>> precision_at;  // k -> fraction
  std::vector<InstanceRecord> per_instance;
};

struct EvalOptions {
  // Drop the instance's context items from the candidate set (they can never
  // be the held-out target). Off by default: the rank formula runs over the
  // whole catalog.
  bool exclude_context_items = false;
};

// Ranks every catalog item by its raw score for each instance. Scores and
// softmax probabilities rank identically, so the exp/normalize pass is
// skipped. Parallel over instances; the mean is reduced in instance order.
EvalReport evaluate(const EmbeddingModel& model,
                    std::span<const TrainingInstance> instances,
                    std::span<const size_t> ks, int threads = 1,
                    const EvalOptions& options = {});

struct MetricDelta {
  double baseline = 0.0;
  double candidate = 0.0;
  double delta = 0.0;
  double ci_lo = 0.0;  // 95% bootstrap interval over instances
  double ci_hi = 0.0;
};

struct ComparisonSummary {
  size_t n_instances = 0;
  MetricDelta mpr;
  std::vector<std::pair<size_t, MetricDelta>> precision_at;
};

// Paired bootstrap over the shared instance set. Throws data_error when the
// reports do not cover the same instances.
ComparisonSummary compare_reports(const EvalReport& baseline,
                                  const EvalReport& candidate,
                                  size_t resamples = 1000, uint64_t seed = 1);

std::string format_report_text(const EvalReport& report);
std::string format_comparison_text(const std::string& baseline_name,
                                   const std::string& candidate_name,
                                   const ComparisonSummary& summary);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json_file(const std::string& path);

}  // namespace b2v
