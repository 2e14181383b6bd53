// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "b2v/errors.hpp"
#include "b2v/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace b2v {

const char* to_string(Objective objective) {
  switch (objective) {
    case Objective::neg: return "neg";
    case Objective::nce: return "nce";
    case Objective::gan_basic: return "gan_basic";
    case Objective::gan_mixed: return "gan_mixed";
  }
  return "neg";
}

std::optional<Objective> objective_from_string(const std::string& name) {
  if (name == "neg") return Objective::neg;
  if (name == "nce") return Objective::nce;
  if (name == "gan_basic") return Objective::gan_basic;
  if (name == "gan_mixed") return Objective::gan_mixed;
  return std::nullopt;
}

bool is_adversarial(Objective objective) {
  return objective == Objective::gan_basic || objective == Objective::gan_mixed;
}

std::vector<std::string> TrainConfig::validate() const {
  std::vector<std::string> errors;
  auto need = [&](bool ok, const char* msg) {
    if (!ok) errors.emplace_back(msg);
  };
  need(dim >= 1, "dim: must be >= 1");
  need(init_scale >= 0.0, "init_scale: must be >= 0");
  need(learning_rate > 0.0, "learning_rate: must be > 0");
  need(lr_floor_ratio > 0.0 && lr_floor_ratio <= 1.0,
       "lr_floor_ratio: must be in (0, 1]");
  need(adversarial_learning_rate > 0.0,
       "adversarial_learning_rate: must be > 0");
  need(max_adversarial_rounds >= 1, "max_adversarial_rounds: must be >= 1");
  need(g_steps >= 1, "g_steps: must be >= 1");
  need(d_steps >= 1, "d_steps: must be >= 1");
  need(k >= 1, "k: must be >= 1");
  need(m >= 1, "m: must be >= 1");
  need(batch_size >= 1, "batch_size: must be >= 1");
  need(eval_every >= 1, "eval_every: must be >= 1");
  need(patience >= 1, "patience: must be >= 1");
  need(validation_fraction > 0.0 && validation_fraction < 1.0,
       "validation_fraction: must be in (0, 1)");
  need(noise_power >= 0.0, "noise_power: must be >= 0");
  need(mix_weight >= 0.0 && mix_weight <= 1.0,
       "mix_weight: must be in [0, 1]");
  need(threads >= 1, "threads: must be >= 1");
  return errors;
}

void sgd_apply(EmbeddingModel& model, const SparseGradient& gradient,
               double lr, int threads) {
  if (!std::isfinite(lr)) throw divergence_error("non-finite learning rate");
  if (!gradient.all_finite()) {
    throw divergence_error("non-finite gradient entries");
  }
  for (const auto& r : gradient.rows) {
    auto dst = r.tag == MatrixTag::input ? model.input_row(r.row)
                                         : model.output_row(r.row);
    for (size_t d = 0; d < dst.size(); ++d) dst[d] += lr * r.values[d];
    for (double v : dst) {
      if (!std::isfinite(v)) {
        throw divergence_error("parameter overflow in row " +
                               std::to_string(r.row));
      }
    }
  }
  if (gradient.has_outer()) {
    kernels::add_scaled_outer(model.output().data(), model.catalog_size(),
                              model.dim(), gradient.outer_coeffs.data(),
                              gradient.outer_direction.data(), lr, threads);
  }
}

namespace {

// Seed-stream tags; every random decision derives from
// (config.seed, tag, round-or-epoch, position).
constexpr uint64_t kStreamInitGenerator = 0x11;
constexpr uint64_t kStreamInitDiscriminator = 0x12;
constexpr uint64_t kStreamPretrainGenerator = 0x21;
constexpr uint64_t kStreamPretrainDiscriminator = 0x22;
constexpr uint64_t kStreamBaseline = 0x23;
constexpr uint64_t kStreamGeneratorSweep = 0x31;
constexpr uint64_t kStreamDiscriminatorSweep = 0x32;
constexpr uint64_t kStreamShuffle = 0x41;
constexpr uint64_t kStreamValidationSplit = 0x51;
constexpr uint64_t kStreamRoundInstances = 0x53;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

double lr_at(const TrainConfig& config, size_t step, size_t total_steps) {
  if (total_steps <= 1) return config.learning_rate;
  const double progress = double(step) / double(total_steps - 1);
  const double factor = 1.0 - (1.0 - config.lr_floor_ratio) * progress;
  return config.learning_rate * factor;
}

std::vector<uint32_t> shuffled_order(size_t n, uint64_t seed) {
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  rng.shuffle(order);
  return order;
}

struct SweepScratch {
  CategoricalDistribution gen_dist;
  CategoricalDistribution disc_dist;
  std::vector<double> cumsum;
};

// One SGD sweep over n positions. Gradients within a batch are computed at
// the parameters in effect at the batch start -- in parallel when requested
// -- and applied serially in position order. batch_size 1 is plain online
// SGD.
template <typename Compute, typename Apply>
void sweep_batched(size_t n, size_t batch_size, int threads, Compute compute,
                   Apply apply) {
  const size_t pool_size =
      (threads > 1 && batch_size > 1) ? static_cast<size_t>(threads) : 1;
  std::vector<SweepScratch> scratch(pool_size);
  std::vector<LossResult> results(std::min(batch_size, n));

  for (size_t start = 0; start < n; start += batch_size) {
    const size_t bs = std::min(batch_size, n - start);
#ifdef _OPENMP
    if (threads > 1 && bs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
      for (long j = 0; j < static_cast<long>(bs); ++j) {
        auto& local = scratch[static_cast<size_t>(omp_get_thread_num())];
        results[static_cast<size_t>(j)] =
            compute(start + static_cast<size_t>(j), local, 1);
      }
    } else
#endif
    {
      for (size_t j = 0; j < bs; ++j) {
        results[j] = compute(start + j, scratch[0], threads);
      }
    }
    for (size_t j = 0; j < bs; ++j) apply(start + j, results[j]);
  }
}

// One epoch of a sigmoid-contrast objective (negative sampling or NCE) over
// shuffled instances. Returns the mean objective value.
double run_contrast_epoch(EmbeddingModel& model,
                          std::span<const TrainingInstance> instances,
                          const NoiseDistribution& noise, Objective objective,
                          const TrainConfig& config, uint64_t stream_tag,
                          size_t epoch, size_t step_base, size_t total_steps) {
  const size_t n = instances.size();
  const auto order = shuffled_order(
      n, derive_seed(config.seed, kStreamShuffle, stream_tag, epoch));

  double sum = 0.0;
  auto compute = [&](size_t j, SweepScratch&, int) {
    const auto& inst = instances[order[j]];
    Rng rng(derive_seed(config.seed, stream_tag, epoch, j));
    const NegativeDraw draw = sample_noise(noise, config.k, rng);
    return objective == Objective::nce ? nce_loss(model, inst, draw, noise)
                                       : neg_loss(model, inst, draw);
  };
  auto apply = [&](size_t j, const LossResult& res) {
    sgd_apply(model, res.gradient, lr_at(config, step_base + j, total_steps),
              config.threads);
    sum += res.loss.value;
  };
  sweep_batched(n, config.batch_size, config.threads, compute, apply);
  return sum / double(n);
}

}  // namespace

void pretrain(TrainState& state, std::span<const TrainingInstance> instances,
              const NoiseDistribution& noise, const TrainConfig& config,
              const TrainLogSink& sink) {
  if (config.epochs_pretrain == 0) return;
  const size_t total_steps = config.epochs_pretrain * instances.size();

  struct Net {
    EmbeddingModel* model;
    uint64_t tag;
    const char* phase;
  };
  std::vector<Net> nets;
  nets.push_back(
      {&state.generator, kStreamPretrainGenerator, "pretrain_generator"});
  if (state.discriminator.has_value()) {
    nets.push_back({&*state.discriminator, kStreamPretrainDiscriminator,
                    "pretrain_discriminator"});
  }

  for (const Net& net : nets) {
    for (size_t epoch = 0; epoch < config.epochs_pretrain; ++epoch) {
      const auto start = std::chrono::steady_clock::now();
      const double mean = run_contrast_epoch(
          *net.model, instances, noise, Objective::neg, config, net.tag, epoch,
          epoch * instances.size(), total_steps);
      if (sink) {
        sink({epoch + 1, net.phase, mean, kNaN, kNaN, seconds_since(start)});
      }
    }
  }
}

double run_generator_sweep(TrainState& state,
                           std::span<const TrainingInstance> instances,
                           const NoiseDistribution& uniform_noise,
                           const TrainConfig& config, size_t step) {
  EmbeddingModel& gen = state.generator;
  EmbeddingModel& disc = *state.discriminator;
  const size_t n = instances.size();
  const size_t round = state.round + 1;
  const auto order = shuffled_order(
      n, derive_seed(config.seed, kStreamShuffle, kStreamGeneratorSweep,
                     (round << 20) | step));

  double sum = 0.0;
  auto compute = [&](size_t j, SweepScratch& scratch, int inner_threads) {
    const auto& inst = instances[order[j]];
    Rng rng(derive_seed(config.seed, kStreamGeneratorSweep, round,
                        (uint64_t(step) << 40) | j));
    const ContextVector ctx = context_embedding(gen, inst.context);
    conditional_distribution_into(gen, ctx, scratch.gen_dist, inner_threads);
    const NegativeDraw draw = sample_from_distribution(
        scratch.gen_dist, config.m, rng, scratch.cumsum);
    const ContextVector disc_ctx = context_embedding(disc, inst.context);
    conditional_distribution_into(disc, disc_ctx, scratch.disc_dist,
                                  inner_threads);
    const RewardWeights weights =
        reward_weights_from(scratch.disc_dist, draw.items);
    if (config.objective == Objective::gan_mixed) {
      const NegativeDraw noise_draw =
          sample_noise(uniform_noise, config.k, rng);
      return mixed_gen_loss_with(gen, scratch.gen_dist, ctx, weights, draw,
                                 noise_draw, inst, config.mix_weight,
                                 inner_threads);
    }
    return reward_gen_loss_with(gen, scratch.gen_dist, ctx, weights, draw,
                                inst, inner_threads);
  };
  auto apply = [&](size_t, const LossResult& res) {
    sgd_apply(gen, res.gradient, config.adversarial_learning_rate,
              config.threads);
    sum += res.loss.value;
  };
  sweep_batched(n, config.batch_size, config.threads, compute, apply);
  return sum / double(n);
}

double run_discriminator_sweep(TrainState& state,
                               std::span<const TrainingInstance> instances,
                               const TrainConfig& config, size_t step) {
  const EmbeddingModel& gen = state.generator;
  EmbeddingModel& disc = *state.discriminator;
  const size_t n = instances.size();
  const size_t round = state.round + 1;
  const auto order = shuffled_order(
      n, derive_seed(config.seed, kStreamShuffle, kStreamDiscriminatorSweep,
                     (round << 20) | step));

  double sum = 0.0;
  auto compute = [&](size_t j, SweepScratch& scratch, int inner_threads) {
    const auto& inst = instances[order[j]];
    Rng rng(derive_seed(config.seed, kStreamDiscriminatorSweep, round,
                        (uint64_t(step) << 40) | j));
    const ContextVector ctx = context_embedding(gen, inst.context);
    conditional_distribution_into(gen, ctx, scratch.gen_dist, inner_threads);
    const NegativeDraw draw = sample_from_distribution(
        scratch.gen_dist, config.k, rng, scratch.cumsum);
    return adversarial_disc_loss(disc, inst, draw);
  };
  auto apply = [&](size_t, const LossResult& res) {
    sgd_apply(disc, res.gradient, config.adversarial_learning_rate,
              config.threads);
    sum += res.loss.value;
  };
  sweep_batched(n, config.batch_size, config.threads, compute, apply);
  return sum / double(n);
}

void adversarial_round(TrainState& state,
                       std::span<const TrainingInstance> instances,
                       const NoiseDistribution& uniform_noise,
                       const TrainConfig& config, const TrainLogSink& sink) {
  if (!state.discriminator.has_value()) {
    throw std::logic_error("adversarial round requires a discriminator");
  }
  for (size_t step = 0; step < config.g_steps; ++step) {
    const auto start = std::chrono::steady_clock::now();
    const double mean =
        run_generator_sweep(state, instances, uniform_noise, config, step);
    if (sink) {
      sink({state.round + 1, "g_sweep", mean, kNaN, kNaN,
            seconds_since(start)});
    }
  }
  for (size_t step = 0; step < config.d_steps; ++step) {
    const auto start = std::chrono::steady_clock::now();
    const double mean =
        run_discriminator_sweep(state, instances, config, step);
    if (sink) {
      sink({state.round + 1, "d_sweep", mean, kNaN, kNaN,
            seconds_since(start)});
    }
  }
  ++state.round;
}

namespace {

void check_model_finite(const TrainState& state) {
  if (!state.generator.all_finite() ||
      (state.discriminator.has_value() && !state.discriminator->all_finite())) {
    throw divergence_error("non-finite model parameters after round " +
                           std::to_string(state.round));
  }
}

}  // namespace

TrainOutcome train(const SplitDataset& dataset, const TrainConfig& config,
                   std::span<const size_t> eval_ks,
                   const TrainCallbacks& callbacks) {
  {
    const auto errors = config.validate();
    if (!errors.empty()) {
      std::ostringstream msg;
      msg << "invalid training config: ";
      for (size_t i = 0; i < errors.size(); ++i) {
        if (i) msg << "; ";
        msg << errors[i];
      }
      throw config_error(msg.str());
    }
  }
  if (dataset.train.baskets.empty()) throw data_error("empty training set");
  if (dataset.test.baskets.empty()) throw data_error("empty test set");

  // Hold out a validation slice of the training baskets for early stopping
  // and progress metrics; the model never trains on it.
  const SplitResult holdout =
      split_train_test(dataset.train, config.validation_fraction,
                       derive_seed(config.seed, kStreamValidationSplit, 0));
  const BasketDataset& fit = holdout.train;
  const BasketDataset& val = holdout.test;

  const NoiseDistribution noise =
      build_noise_distribution(fit, config.noise_kind, config.noise_power);

  const InstanceSet fit_set =
      make_instances(fit, InstanceMode::all_positions, 0);
  if (fit_set.instances.empty()) {
    throw data_error("training baskets produced no instances");
  }
  const InstanceSet val_set = make_instances(
      val, InstanceMode::one_random,
      derive_seed(config.eval_instance_seed, kStreamValidationSplit, 1));
  const InstanceSet test_set = make_instances(
      dataset.test, InstanceMode::one_random, config.eval_instance_seed);
  if (test_set.instances.empty()) {
    throw data_error("test baskets produced no instances");
  }

  const size_t catalog_size = dataset.train.catalog_size();
  TrainOutcome outcome{
      TrainState{EmbeddingModel::random(
                     catalog_size, config.dim,
                     derive_seed(config.seed, kStreamInitGenerator, 0),
                     config.init_scale, ModelRole::generator),
                 std::nullopt, 0, config.seed, {}},
      std::nullopt, std::nullopt, {}, {}, 0};
  TrainState& st = outcome.state;

  auto log = [&](const TrainLogRecord& record) {
    st.history.push_back(record);
    if (callbacks.log) callbacks.log(record);
  };

  try {
    if (!is_adversarial(config.objective)) {
      const size_t n = fit_set.instances.size();
      const size_t total_steps = config.epochs_pretrain * n;
      for (size_t epoch = 0; epoch < config.epochs_pretrain; ++epoch) {
        const auto start = std::chrono::steady_clock::now();
        const double mean = run_contrast_epoch(
            st.generator, fit_set.instances, noise, config.objective, config,
            kStreamBaseline, epoch, epoch * n, total_steps);
        TrainLogRecord record{epoch + 1, "epoch", mean, kNaN, kNaN,
                              seconds_since(start)};
        if ((epoch + 1) % config.eval_every == 0 &&
            !val_set.instances.empty()) {
          record.val_mpr_generator =
              evaluate(st.generator, val_set.instances, eval_ks,
                       config.threads)
                  .mpr;
        }
        st.round = epoch + 1;
        log(record);
        if ((epoch + 1) % config.eval_every == 0 && callbacks.on_eval_point) {
          callbacks.on_eval_point(st);
        }
      }
      check_model_finite(st);
    } else {
      st.discriminator = EmbeddingModel::random(
          catalog_size, config.dim,
          derive_seed(config.seed, kStreamInitDiscriminator, 0),
          config.init_scale, ModelRole::discriminator);

      pretrain(st, fit_set.instances, noise, config, log);
      check_model_finite(st);
      outcome.pretrain_generator = st.generator;
      outcome.pretrain_discriminator = *st.discriminator;

      // The likelihood half of the mixed objective always contrasts against
      // uniform draws regardless of the pre-training noise.
      const NoiseDistribution uniform =
          build_noise_distribution(fit, NoiseKind::uniform, 0.0);

      const bool can_validate = !val_set.instances.empty();
      EarlyStopper stopper(config.patience);
      EmbeddingModel best_generator = st.generator;
      EmbeddingModel best_discriminator = *st.discriminator;
      size_t best_round = 0;

      if (can_validate) {
        const double g_mpr =
            evaluate(st.generator, val_set.instances, eval_ks, config.threads)
                .mpr;
        const double d_mpr = evaluate(*st.discriminator, val_set.instances,
                                      eval_ks, config.threads)
                                 .mpr;
        log({0, "eval", kNaN, g_mpr, d_mpr, 0.0});
        stopper.observe(g_mpr);
        if (callbacks.on_eval_point) callbacks.on_eval_point(st);
      }

      while (st.round < config.max_adversarial_rounds) {
        const size_t upcoming = st.round + 1;
        const InstanceSet round_set = make_instances(
            fit, InstanceMode::one_random,
            derive_seed(config.seed, kStreamRoundInstances, upcoming));
        adversarial_round(st, round_set.instances, uniform, config, log);

        if (st.round % config.eval_every != 0 || !can_validate) continue;

        const auto start = std::chrono::steady_clock::now();
        const double g_mpr =
            evaluate(st.generator, val_set.instances, eval_ks, config.threads)
                .mpr;
        const double d_mpr = evaluate(*st.discriminator, val_set.instances,
                                      eval_ks, config.threads)
                                 .mpr;
        log({st.round, "eval", kNaN, g_mpr, d_mpr, seconds_since(start)});
        check_model_finite(st);
        if (callbacks.on_eval_point) callbacks.on_eval_point(st);

        const bool stop = stopper.observe(g_mpr);
        if (stopper.last_improved()) {
          best_generator = st.generator;
          best_discriminator = *st.discriminator;
          best_round = st.round;
        }
        if (stop) break;
      }

      if (can_validate) {
        st.generator = std::move(best_generator);
        st.discriminator = std::move(best_discriminator);
        outcome.best_round = best_round;
      } else {
        outcome.best_round = st.round;
      }
      check_model_finite(st);
    }
  } catch (const divergence_error&) {
    if (callbacks.on_divergence) callbacks.on_divergence(st);
    throw;
  }

  outcome.final_generator_report =
      evaluate(st.generator, test_set.instances, eval_ks, config.threads);
  if (st.discriminator.has_value()) {
    outcome.final_discriminator_report =
        evaluate(*st.discriminator, test_set.instances, eval_ks,
                 config.threads);
  }
  return outcome;
}

}  // namespace b2v
