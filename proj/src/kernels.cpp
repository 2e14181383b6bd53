// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace b2v::kernels {

namespace {

inline bool use_omp(int threads) {
#ifdef _OPENMP
  return threads > 1;
#else
  (void)threads;
  return false;
#endif
}

}  // namespace

double dot_serial(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void row_scores_serial(const double* weights, size_t rows, size_t dim,
                       const double* vec, double* out) {
  for (size_t j = 0; j < rows; ++j) {
    out[j] = dot_serial(weights + j * dim, vec, dim);
  }
}

void row_scores_omp(const double* weights, size_t rows, size_t dim,
                    const double* vec, double* out, int threads) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long j = 0; j < static_cast<long>(rows); ++j) {
    out[j] = dot_serial(weights + static_cast<size_t>(j) * dim, vec, dim);
  }
#else
  (void)threads;
  row_scores_serial(weights, rows, dim, vec, out);
#endif
}

void row_scores(const double* weights, size_t rows, size_t dim,
                const double* vec, double* out, int threads) {
  if (use_omp(threads)) {
    row_scores_omp(weights, rows, dim, vec, out, threads);
  } else {
    row_scores_serial(weights, rows, dim, vec, out);
  }
}

SoftmaxStats softmax_serial(std::span<double> scores,
                            std::span<double> probs) {
  const size_t n = scores.size();
  double max_score = scores[0];
  for (size_t i = 1; i < n; ++i) max_score = std::max(max_score, scores[i]);

  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    probs[i] = std::exp(scores[i] - max_score);
    sum += probs[i];
  }
  const double log_sum = std::log(sum);
  const double inv_sum = 1.0 / sum;
  for (size_t i = 0; i < n; ++i) {
    probs[i] *= inv_sum;
    scores[i] = scores[i] - max_score - log_sum;
  }
  return {max_score, max_score + log_sum};
}

SoftmaxStats softmax_omp(std::span<double> scores, std::span<double> probs,
                         int threads) {
#ifdef _OPENMP
  const long n = static_cast<long>(scores.size());
  double max_score = scores[0];
#pragma omp parallel for schedule(static) num_threads(threads) \
    reduction(max : max_score)
  for (long i = 0; i < n; ++i) max_score = std::max(max_score, scores[i]);

  double sum = 0.0;
#pragma omp parallel for schedule(static) num_threads(threads) \
    reduction(+ : sum)
  for (long i = 0; i < n; ++i) {
    probs[i] = std::exp(scores[i] - max_score);
    sum += probs[i];
  }
  const double log_sum = std::log(sum);
  const double inv_sum = 1.0 / sum;
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    probs[i] *= inv_sum;
    scores[i] = scores[i] - max_score - log_sum;
  }
  return {max_score, max_score + log_sum};
#else
  (void)threads;
  return softmax_serial(scores, probs);
#endif
}

SoftmaxStats softmax(std::span<double> scores, std::span<double> probs,
                     int threads) {
  if (use_omp(threads)) return softmax_omp(scores, probs, threads);
  return softmax_serial(scores, probs);
}

void add_scaled_outer_serial(double* weights, size_t rows, size_t dim,
                             const double* coeffs, const double* dir,
                             double alpha) {
  for (size_t j = 0; j < rows; ++j) {
    const double c = alpha * coeffs[j];
    if (c == 0.0) continue;
    double* row = weights + j * dim;
    for (size_t d = 0; d < dim; ++d) row[d] += c * dir[d];
  }
}

void add_scaled_outer_omp(double* weights, size_t rows, size_t dim,
                          const double* coeffs, const double* dir,
                          double alpha, int threads) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long j = 0; j < static_cast<long>(rows); ++j) {
    const double c = alpha * coeffs[j];
    if (c == 0.0) continue;
    double* row = weights + static_cast<size_t>(j) * dim;
    for (size_t d = 0; d < dim; ++d) row[d] += c * dir[d];
  }
#else
  (void)threads;
  add_scaled_outer_serial(weights, rows, dim, coeffs, dir, alpha);
#endif
}

void add_scaled_outer(double* weights, size_t rows, size_t dim,
                      const double* coeffs, const double* dir, double alpha,
                      int threads) {
  if (use_omp(threads)) {
    add_scaled_outer_omp(weights, rows, dim, coeffs, dir, alpha, threads);
  } else {
    add_scaled_outer_serial(weights, rows, dim, coeffs, dir, alpha);
  }
}

void weighted_rowsum_serial(const double* weights, size_t rows, size_t dim,
                            const double* coeffs, double* out) {
  std::fill(out, out + dim, 0.0);
  for (size_t j = 0; j < rows; ++j) {
    const double c = coeffs[j];
    if (c == 0.0) continue;
    const double* row = weights + j * dim;
    for (size_t d = 0; d < dim; ++d) out[d] += c * row[d];
  }
}

void weighted_rowsum_omp(const double* weights, size_t rows, size_t dim,
                         const double* coeffs, double* out, int threads) {
#ifdef _OPENMP
  std::vector<double> partials(static_cast<size_t>(threads) * dim, 0.0);
#pragma omp parallel num_threads(threads)
  {
    double* local = partials.data() + size_t(omp_get_thread_num()) * dim;
#pragma omp for schedule(static)
    for (long j = 0; j < static_cast<long>(rows); ++j) {
      const double c = coeffs[j];
      if (c == 0.0) continue;
      const double* row = weights + static_cast<size_t>(j) * dim;
      for (size_t d = 0; d < dim; ++d) local[d] += c * row[d];
    }
  }
  std::fill(out, out + dim, 0.0);
  for (int t = 0; t < threads; ++t) {
    const double* local = partials.data() + size_t(t) * dim;
    for (size_t d = 0; d < dim; ++d) out[d] += local[d];
  }
#else
  (void)threads;
  weighted_rowsum_serial(weights, rows, dim, coeffs, out);
#endif
}

void weighted_rowsum(const double* weights, size_t rows, size_t dim,
                     const double* coeffs, double* out, int threads) {
  if (use_omp(threads)) {
    weighted_rowsum_omp(weights, rows, dim, coeffs, out, threads);
  } else {
    weighted_rowsum_serial(weights, rows, dim, coeffs, out);
  }
}

}  // namespace b2v::kernels
