// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Times the serial reference kernels against their OpenMP counterparts on
// retail-scale shapes and reports the worst relative deviation between the
// two, plus an end-to-end timing of one adversarial instance update and an
// evaluation pass.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "b2v/eval.hpp"
#include "b2v/kernels.hpp"
#include "b2v/losses.hpp"
#include "b2v/model.hpp"
#include "b2v/rng.hpp"
#include "b2v/sampling.hpp"

using namespace b2v;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename Fn>
double time_per_call(Fn&& fn, int iterations) {
  fn();  // warm up
  const double start = now_seconds();
  for (int i = 0; i < iterations; ++i) fn();
  return (now_seconds() - start) / iterations;
}

double max_rel_diff(const std::vector<double>& a,
                    const std::vector<double>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::fabs(a[i]), std::fabs(b[i]), 1e-300});
    worst = std::max(worst, std::fabs(a[i] - b[i]) / scale);
  }
  return worst;
}

void print_row(const char* name, double serial_s, double parallel_s,
               double deviation) {
  std::cout << std::left << std::setw(22) << name << std::right
            << std::setw(12) << std::fixed << std::setprecision(1)
            << serial_s * 1e6 << std::setw(12) << parallel_s * 1e6
            << std::setw(10) << std::setprecision(2)
            << serial_s / parallel_s << std::scientific << std::setw(14)
            << std::setprecision(2) << deviation << std::fixed << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  size_t catalog = 16470;
  size_t dim = 64;
  int threads =
#ifdef _OPENMP
      omp_get_max_threads();
#else
      1;
#endif
  if (argc > 1) catalog = std::stoul(argv[1]);
  if (argc > 2) dim = std::stoul(argv[2]);
  if (argc > 3) threads = std::stoi(argv[3]);

  std::cout << "catalog " << catalog << ", dim " << dim << ", threads "
            << threads << "\n\n";
  std::cout << std::left << std::setw(22) << "kernel" << std::right
            << std::setw(12) << "serial us" << std::setw(12) << "omp us"
            << std::setw(10) << "speedup" << std::setw(14) << "max rel dev"
            << "\n";

  const EmbeddingModel model = EmbeddingModel::random(
      catalog, dim, 42, 1.0, ModelRole::generator);
  Rng rng(7);
  std::vector<double> vec(dim);
  for (double& v : vec) v = rng.uniform(-1.0, 1.0);

  std::vector<double> out_serial(catalog), out_omp(catalog);
  {
    const double ts = time_per_call(
        [&] {
          kernels::row_scores_serial(model.output().data(), catalog, dim,
                                     vec.data(), out_serial.data());
        },
        50);
    const double tp = time_per_call(
        [&] {
          kernels::row_scores_omp(model.output().data(), catalog, dim,
                                  vec.data(), out_omp.data(), threads);
        },
        50);
    print_row("row_scores", ts, tp, max_rel_diff(out_serial, out_omp));
  }

  {
    std::vector<double> scores_a(out_serial), scores_b(out_serial);
    std::vector<double> probs_a(catalog), probs_b(catalog);
    const double ts = time_per_call(
        [&] {
          scores_a = out_serial;
          kernels::softmax_serial(scores_a, probs_a);
        },
        50);
    const double tp = time_per_call(
        [&] {
          scores_b = out_serial;
          kernels::softmax_omp(scores_b, probs_b, threads);
        },
        50);
    const double dev = std::max(max_rel_diff(probs_a, probs_b),
                                max_rel_diff(scores_a, scores_b));
    print_row("softmax", ts, tp, dev);
  }

  {
    std::vector<double> coeffs(catalog);
    for (double& c : coeffs) c = rng.uniform(-1.0, 1.0);
    EmbeddingModel a = model, b = model;
    const double ts = time_per_call(
        [&] {
          kernels::add_scaled_outer_serial(a.output().data(), catalog, dim,
                                           coeffs.data(), vec.data(), 1e-6);
        },
        50);
    const double tp = time_per_call(
        [&] {
          kernels::add_scaled_outer_omp(b.output().data(), catalog, dim,
                                        coeffs.data(), vec.data(), 1e-6,
                                        threads);
        },
        50);
    print_row("add_scaled_outer", ts, tp,
              max_rel_diff(a.output(), b.output()));
  }

  {
    std::vector<double> coeffs(catalog);
    for (double& c : coeffs) c = rng.uniform(0.0, 1.0);
    std::vector<double> sum_a(dim), sum_b(dim);
    const double ts = time_per_call(
        [&] {
          kernels::weighted_rowsum_serial(model.output().data(), catalog, dim,
                                          coeffs.data(), sum_a.data());
        },
        50);
    const double tp = time_per_call(
        [&] {
          kernels::weighted_rowsum_omp(model.output().data(), catalog, dim,
                                       coeffs.data(), sum_b.data(), threads);
        },
        50);
    print_row("weighted_rowsum", ts, tp, max_rel_diff(sum_a, sum_b));
  }

  // End-to-end shapes: one generator update and one evaluation pass.
  {
    const EmbeddingModel disc = EmbeddingModel::random(
        catalog, dim, 43, 1.0, ModelRole::discriminator);
    EmbeddingModel gen = model;
    TrainingInstance inst;
    inst.context = {1, 2, 3, 4, 5, 6, 7};
    inst.target = 8;
    CategoricalDistribution dist;
    std::vector<double> cumsum;
    auto step = [&](int t) {
      const ContextVector ctx = context_embedding(gen, inst.context);
      conditional_distribution_into(gen, ctx, dist, t);
      Rng draw_rng(11);
      const NegativeDraw draw = sample_from_distribution(dist, 5, draw_rng, cumsum);
      const RewardWeights weights = reward_weights(disc, draw, inst.context, t);
      const LossResult res =
          reward_gen_loss_with(gen, dist, ctx, weights, draw, inst, t);
      kernels::add_scaled_outer(gen.output().data(), catalog, dim,
                                res.gradient.outer_coeffs.data(),
                                res.gradient.outer_direction.data(), 1e-4, t);
    };
    const double ts = time_per_call([&] { step(1); }, 20);
    const double tp = time_per_call([&] { step(threads); }, 20);
    print_row("generator_update", ts, tp, 0.0);
    std::cout << "\none generator sweep over 70k instances, extrapolated: "
              << std::setprecision(1) << ts * 70000.0 / 60.0
              << " min serial, " << tp * 70000.0 / 60.0 << " min with "
              << threads << " threads\n";
  }

  {
    Rng inst_rng(5);
    std::vector<TrainingInstance> instances(512);
    for (auto& inst : instances) {
      const size_t size = 2 + inst_rng.below(6);
      for (size_t i = 0; i < size; ++i) {
        inst.context.push_back(
            static_cast<uint32_t>(inst_rng.below(catalog)));
      }
      inst.target = static_cast<uint32_t>(inst_rng.below(catalog));
    }
    const std::vector<size_t> ks = {1, 10};
    EvalReport serial_report, parallel_report;
    const double ts = time_per_call(
        [&] { serial_report = evaluate(model, instances, ks, 1); }, 5);
    const double tp = time_per_call(
        [&] { parallel_report = evaluate(model, instances, ks, threads); }, 5);
    const double dev =
        std::fabs(serial_report.mpr - parallel_report.mpr) /
        std::max(1.0, std::fabs(serial_report.mpr));
    print_row("evaluate_512", ts, tp, dev);
  }

  return 0;
}
