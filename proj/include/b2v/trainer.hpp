// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "b2v/corpus.hpp"
#include "b2v/eval.hpp"
#include "b2v/losses.hpp"
#include "b2v/model.hpp"

namespace b2v {

enum class Objective { neg, nce, gan_basic, gan_mixed };

const char* to_string(Objective objective);
std::optional<Objective> objective_from_string(const std::string& name);

bool is_adversarial(Objective objective);

struct TrainConfig {
  size_t dim = 64;
  double init_scale = 1.0;

  // Baseline / pre-training phase: plain SGD with per-step linear decay down
  // to lr_floor_ratio * learning_rate across the whole schedule.
  double learning_rate = 0.05;
  double lr_floor_ratio = 0.1;
  size_t epochs_pretrain = 10;

  // Adversarial phase: constant rate, alternating sweeps.
  double adversarial_learning_rate = 0.01;
  size_t max_adversarial_rounds = 50;
  size_t g_steps = 1;
  size_t d_steps = 1;

  size_t k = 5;  // discriminator negatives per instance
  size_t m = 5;  // generator samples per instance
  size_t batch_size = 1;
  uint64_t seed = 1;
  Objective objective = Objective::neg;
  NoiseKind noise_kind = NoiseKind::unigram;
  double noise_power = 0.75;
  double mix_weight = 0.5;  // weight of the reward half in the mixed loss

  size_t eval_every = 1;  // rounds (adversarial) or epochs (baselines)
  size_t patience = 3;
  double validation_fraction = 0.1;
  uint64_t eval_instance_seed = 17;  // one-random removal for val/test sets

  int threads = 1;

  // Empty when valid; otherwise one "field: problem" entry per offense.
  std::vector<std::string> validate() const;
};

struct TrainLogRecord {
  size_t round = 0;
  std::string phase;  // pretrain_generator, g_sweep, d_sweep, eval, ...
  double mean_objective = 0.0;
  double val_mpr_generator = 0.0;     // NaN when not evaluated
  double val_mpr_discriminator = 0.0; // NaN when not evaluated or absent
  double seconds = 0.0;
};

struct TrainState {
  EmbeddingModel generator;
  std::optional<EmbeddingModel> discriminator;
  size_t round = 0;
  uint64_t seed = 0;  // all random streams derive from (seed, phase, round)
  std::vector<TrainLogRecord> history;
};

// row += lr * gradient, ascent on the maximize-convention objectives.
// Throws divergence_error on non-finite gradient entries or when an updated
// row leaves the finite range.
void sgd_apply(EmbeddingModel& model, const SparseGradient& gradient,
               double lr, int threads = 1);

using TrainLogSink = std::function<void(const TrainLogRecord&)>;

// Both networks trained independently with the negative-sampling objective
// for epochs_pretrain epochs each. A no-op (rng untouched) when
// epochs_pretrain is zero.
void pretrain(TrainState& state, std::span<const TrainingInstance> instances,
              const NoiseDistribution& noise, const TrainConfig& config,
              const TrainLogSink& sink = {});

// One adversarial round: g_steps generator sweeps over the instances (fresh
// generator draws per instance, reward weights from the discriminator),
// then d_steps discriminator sweeps (fresh generator draws). The generator
// is frozen during d-sweeps and vice versa. Increments state.round.
void adversarial_round(TrainState& state,
                       std::span<const TrainingInstance> instances,
                       const NoiseDistribution& uniform_noise,
                       const TrainConfig& config,
                       const TrainLogSink& sink = {});

// Exposed for isolation tests and instrumentation.
double run_generator_sweep(TrainState& state,
                           std::span<const TrainingInstance> instances,
                           const NoiseDistribution& uniform_noise,
                           const TrainConfig& config, size_t step);
double run_discriminator_sweep(TrainState& state,
                               std::span<const TrainingInstance> instances,
                               const TrainConfig& config, size_t step);

// Validation-driven early stopping: strict improvements reset the counter,
// `patience` consecutive non-improving observations stop the run.
class EarlyStopper {
 public:
  explicit EarlyStopper(size_t patience) : patience_(patience) {}

  // Returns true when training should stop.
  bool observe(double metric) {
    if (metric > best_) {
      best_ = metric;
      since_improvement_ = 0;
      improved_ = true;
    } else {
      ++since_improvement_;
      improved_ = false;
    }
    return since_improvement_ >= patience_;
  }

  bool last_improved() const { return improved_; }
  double best() const { return best_; }

 private:
  size_t patience_;
  double best_ = -std::numeric_limits<double>::infinity();
  size_t since_improvement_ = 0;
  bool improved_ = false;
};

struct SplitDataset {
  BasketDataset train;
  BasketDataset test;
};

struct TrainOutcome {
  TrainState state;
  // Snapshots taken right after pre-training, before any adversarial round
  // (adversarial objectives only).
  std::optional<EmbeddingModel> pretrain_generator;
  std::optional<EmbeddingModel> pretrain_discriminator;
  EvalReport final_generator_report;
  std::optional<EvalReport> final_discriminator_report;
  size_t best_round = 0;  // round whose validation MPR selected the models
};

struct TrainCallbacks {
  TrainLogSink log;
  // Invoked with the current state before a divergence_error propagates.
  std::function<void(const TrainState&)> on_divergence;
  // Invoked after each adversarial evaluation point (checkpointing hook).
  std::function<void(const TrainState&)> on_eval_point;
};

// Full training pipeline: carves a validation slice from the train half,
// builds the noise distribution, dispatches on the objective, and evaluates
// the final models on one-random test instances. Adversarial objectives
// pre-train both networks, then alternate rounds with early stopping on the
// generator's validation MPR; the best-validation models are restored.
TrainOutcome train(const SplitDataset& dataset, const TrainConfig& config,
                   std::span<const size_t> eval_ks,
                   const TrainCallbacks& callbacks = {});

}  // namespace b2v
