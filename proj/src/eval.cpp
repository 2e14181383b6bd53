// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "b2v/errors.hpp"
#include "b2v/kernels.hpp"
#include "b2v/rng.hpp"

namespace b2v {

PercentileRankResult percentile_rank(std::span<const double> scores,
                                     uint32_t target) {
  if (scores.empty()) throw std::invalid_argument("empty score vector");
  if (target >= scores.size()) throw std::invalid_argument("target out of range");
  const double s = scores[target];
  size_t ge = 0, gt = 0;
  for (double x : scores) {
    if (s >= x) ++ge;
    if (x > s) ++gt;
  }
  PercentileRankResult result;
  result.pr = 100.0 * double(ge) / double(scores.size());
  result.rank = static_cast<uint32_t>(gt + 1);
  return result;
}

namespace {

// Percentile rank over the catalog minus the instance's context items.
PercentileRankResult masked_percentile_rank(std::span<const double> scores,
                                            uint32_t target,
                                            std::span<const uint32_t> exclude) {
  const double s = scores[target];
  size_t ge = 0, gt = 0, dropped = 0;
  for (size_t j = 0; j < scores.size(); ++j) {
    bool skip = false;
    for (uint32_t e : exclude) {
      if (e == j) {
        skip = true;
        break;
      }
    }
    if (skip) {
      ++dropped;
      continue;
    }
    if (s >= scores[j]) ++ge;
    if (scores[j] > s) ++gt;
  }
  PercentileRankResult result;
  result.pr = 100.0 * double(ge) / double(scores.size() - dropped);
  result.rank = static_cast<uint32_t>(gt + 1);
  return result;
}

}  // namespace

EvalReport evaluate(const EmbeddingModel& model,
                    std::span<const TrainingInstance> instances,
                    std::span<const size_t> ks, int threads,
                    const EvalOptions& options) {
  if (instances.empty()) throw data_error("empty test set");

  EvalReport report;
  report.scorer = to_string(model.role());
  report.n_instances = instances.size();
  report.per_instance.resize(instances.size());

  const size_t catalog = model.catalog_size();
  const size_t dim = model.dim();
  const long n = static_cast<long>(instances.size());

#ifdef _OPENMP
#pragma omp parallel num_threads(threads > 1 ? threads : 1) if (threads > 1)
#endif
  {
    std::vector<double> scores(catalog);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (long i = 0; i < n; ++i) {
      const auto& inst = instances[static_cast<size_t>(i)];
      const ContextVector ctx = context_embedding(model, inst.context);
      kernels::row_scores_serial(model.output().data(), catalog, dim,
                                 ctx.values.data(), scores.data());
      const auto pr =
          options.exclude_context_items
              ? masked_percentile_rank(scores, inst.target, inst.context)
              : percentile_rank(scores, inst.target);
      auto& rec = report.per_instance[static_cast<size_t>(i)];
      rec.id = static_cast<uint32_t>(i);
      rec.basket = inst.basket_index;
      rec.pr = pr.pr;
      rec.rank = pr.rank;
    }
  }

  double sum = 0.0;
  for (const auto& rec : report.per_instance) sum += rec.pr;
  report.mpr = sum / double(report.n_instances);

  for (size_t k : ks) {
    size_t hits = 0;
    for (const auto& rec : report.per_instance) {
      if (rec.rank <= k) ++hits;
    }
    report.precision_at.emplace_back(k,
                                     double(hits) / double(report.n_instances));
  }
  std::sort(report.precision_at.begin(), report.precision_at.end());
  return report;
}

namespace {

double mean_over(const std::vector<double>& values,
                 const std::vector<uint32_t>& idx) {
  double sum = 0.0;
  for (uint32_t i : idx) sum += values[i];
  return sum / double(idx.size());
}

std::pair<double, double> percentile_interval(std::vector<double>& deltas) {
  std::sort(deltas.begin(), deltas.end());
  const size_t n = deltas.size();
  auto at = [&](double q) {
    const double pos = q * double(n - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - double(lo);
    return deltas[lo] * (1.0 - frac) + deltas[hi] * frac;
  };
  return {at(0.025), at(0.975)};
}

}  // namespace

ComparisonSummary compare_reports(const EvalReport& baseline,
                                  const EvalReport& candidate,
                                  size_t resamples, uint64_t seed) {
  if (baseline.n_instances != candidate.n_instances) {
    throw data_error("reports cover different numbers of instances");
  }
  const size_t n = baseline.n_instances;
  for (size_t i = 0; i < n; ++i) {
    if (baseline.per_instance[i].id != candidate.per_instance[i].id ||
        baseline.per_instance[i].basket != candidate.per_instance[i].basket) {
      throw data_error("reports cover different instance sets");
    }
  }

  std::vector<double> pr_a(n), pr_b(n);
  for (size_t i = 0; i < n; ++i) {
    pr_a[i] = baseline.per_instance[i].pr;
    pr_b[i] = candidate.per_instance[i].pr;
  }

  ComparisonSummary summary;
  summary.n_instances = n;
  summary.mpr.baseline = baseline.mpr;
  summary.mpr.candidate = candidate.mpr;
  summary.mpr.delta = candidate.mpr - baseline.mpr;

  // Shared ks only; reports straight from `evaluate` always match.
  std::vector<size_t> shared_ks;
  for (const auto& [k, v] : baseline.precision_at) {
    (void)v;
    for (const auto& [k2, v2] : candidate.precision_at) {
      (void)v2;
      if (k == k2) shared_ks.push_back(k);
    }
  }

  struct PrecPair {
    std::vector<double> a, b;  // 0/1 hit indicators
  };
  std::vector<PrecPair> hits(shared_ks.size());
  for (size_t ki = 0; ki < shared_ks.size(); ++ki) {
    hits[ki].a.resize(n);
    hits[ki].b.resize(n);
    for (size_t i = 0; i < n; ++i) {
      hits[ki].a[i] = baseline.per_instance[i].rank <= shared_ks[ki] ? 1. : 0.;
      hits[ki].b[i] = candidate.per_instance[i].rank <= shared_ks[ki] ? 1. : 0.;
    }
  }

  Rng rng(seed);
  std::vector<uint32_t> idx(n);
  std::vector<double> mpr_deltas(resamples);
  std::vector<std::vector<double>> prec_deltas(shared_ks.size());
  for (auto& v : prec_deltas) v.resize(resamples);

  for (size_t r = 0; r < resamples; ++r) {
    for (size_t i = 0; i < n; ++i) {
      idx[i] = static_cast<uint32_t>(rng.below(n));
    }
    mpr_deltas[r] = mean_over(pr_b, idx) - mean_over(pr_a, idx);
    for (size_t ki = 0; ki < shared_ks.size(); ++ki) {
      prec_deltas[ki][r] =
          mean_over(hits[ki].b, idx) - mean_over(hits[ki].a, idx);
    }
  }

  std::tie(summary.mpr.ci_lo, summary.mpr.ci_hi) =
      percentile_interval(mpr_deltas);

  for (size_t ki = 0; ki < shared_ks.size(); ++ki) {
    MetricDelta d;
    const size_t k = shared_ks[ki];
    for (const auto& [kk, v] : baseline.precision_at) {
      if (kk == k) d.baseline = v;
    }
    for (const auto& [kk, v] : candidate.precision_at) {
      if (kk == k) d.candidate = v;
    }
    d.delta = d.candidate - d.baseline;
    std::tie(d.ci_lo, d.ci_hi) = percentile_interval(prec_deltas[ki]);
    summary.precision_at.emplace_back(k, d);
  }
  return summary;
}

std::string format_report_text(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "scorer:    " << report.scorer << "\n";
  out << "instances: " << report.n_instances << "\n";
  out << std::left << std::setw(16) << "metric" << "value\n";
  out << std::left << std::setw(16) << "MPR" << std::setprecision(2)
      << report.mpr << "\n";
  out << std::setprecision(4);
  for (const auto& [k, v] : report.precision_at) {
    out << std::left << std::setw(16) << ("precision@" + std::to_string(k))
        << v << "  (" << std::setprecision(2) << 100.0 * v << "%)"
        << std::setprecision(4) << "\n";
  }
  return out.str();
}

std::string format_comparison_text(const std::string& baseline_name,
                                   const std::string& candidate_name,
                                   const ComparisonSummary& summary) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "baseline:  " << baseline_name << "\n";
  out << "candidate: " << candidate_name << "\n";
  out << "instances: " << summary.n_instances << "\n";
  out << std::left << std::setw(16) << "metric" << std::setw(12) << "baseline"
      << std::setw(12) << "candidate" << std::setw(12) << "delta"
      << "95% CI\n";
  auto line = [&](const std::string& name, const MetricDelta& d,
                  double scale) {
    out << std::left << std::setw(16) << name << std::setw(12)
        << d.baseline * scale << std::setw(12) << d.candidate * scale
        << std::setw(12) << d.delta * scale << "[" << d.ci_lo * scale << ", "
        << d.ci_hi * scale << "]\n";
  };
  line("MPR", summary.mpr, 1.0);
  for (const auto& [k, d] : summary.precision_at) {
    line("precision@" + std::to_string(k), d, 1.0);
  }
  return out.str();
}

}  // namespace b2v
