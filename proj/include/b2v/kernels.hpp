// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>

namespace b2v::kernels {

// Dense inner loops over the embedding tables. Every kernel comes in two
// flavors: a `_serial` reference used by the deterministic single-threaded
// path and by tests, and an OpenMP variant selected by the dispatching
// overload when `threads > 1`. The parallel variants partition rows
// statically, so results depend only on the thread count, never on
// scheduling; bitwise reproducibility is promised for threads == 1.

double dot_serial(const double* a, const double* b, size_t n);

// out[j] = dot(weights row j, vec) for j in [0, rows).
void row_scores_serial(const double* weights, size_t rows, size_t dim,
                       const double* vec, double* out);
void row_scores_omp(const double* weights, size_t rows, size_t dim,
                    const double* vec, double* out, int threads);
void row_scores(const double* weights, size_t rows, size_t dim,
                const double* vec, double* out, int threads);

struct SoftmaxStats {
  double max_score = 0.0;
  double log_normalizer = 0.0;  // max_score + log sum exp(score - max)
};

// Max-shifted softmax. `scores` holds raw scores on entry; on exit `probs`
// holds the normalized distribution and `scores` is rewritten to log
// probabilities in place.
SoftmaxStats softmax_serial(std::span<double> scores, std::span<double> probs);
SoftmaxStats softmax_omp(std::span<double> scores, std::span<double> probs,
                         int threads);
SoftmaxStats softmax(std::span<double> scores, std::span<double> probs,
                     int threads);

// weights row j += alpha * coeffs[j] * dir, for all rows.
void add_scaled_outer_serial(double* weights, size_t rows, size_t dim,
                             const double* coeffs, const double* dir,
                             double alpha);
void add_scaled_outer_omp(double* weights, size_t rows, size_t dim,
                          const double* coeffs, const double* dir,
                          double alpha, int threads);
void add_scaled_outer(double* weights, size_t rows, size_t dim,
                      const double* coeffs, const double* dir, double alpha,
                      int threads);

// out = sum_j coeffs[j] * weights row j. Partial sums are combined in thread
// order.
void weighted_rowsum_serial(const double* weights, size_t rows, size_t dim,
                            const double* coeffs, double* out);
void weighted_rowsum_omp(const double* weights, size_t rows, size_t dim,
                         const double* coeffs, double* out, int threads);
void weighted_rowsum(const double* weights, size_t rows, size_t dim,
                     const double* coeffs, double* out, int threads);

}  // namespace b2v::kernels
