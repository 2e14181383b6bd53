// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "b2v/errors.hpp"
#include "b2v/trainer.hpp"
#include "synthetic.hpp"

using namespace b2v;

namespace {

TrainConfig toy_config(Objective objective) {
  TrainConfig cfg;
  cfg.objective = objective;
  cfg.dim = 8;
  cfg.k = 3;
  cfg.m = 3;
  cfg.epochs_pretrain = 3;
  cfg.max_adversarial_rounds = 2;
  cfg.patience = 3;
  cfg.eval_every = 1;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("config validation names the offending fields") {
  TrainConfig cfg;
  cfg.g_steps = 0;
  cfg.learning_rate = 0.0;
  cfg.mix_weight = 1.5;
  const auto errors = cfg.validate();
  REQUIRE(errors.size() == 3);
  CHECK(errors[0].find("learning_rate") != std::string::npos);
  CHECK(errors[1].find("g_steps") != std::string::npos);
  CHECK(errors[2].find("mix_weight") != std::string::npos);
  CHECK(TrainConfig{}.validate().empty());
}

TEST_CASE("sgd_apply: zero rate, exact delta, additivity") {
  EmbeddingModel model =
      EmbeddingModel::random(4, 3, 7, 1.0, ModelRole::generator);
  const std::vector<double> before = model.output();

  SparseGradient grad;
  grad.dim = 3;
  grad.row(MatrixTag::output, 2) = {1.0, -2.0, 0.5};

  sgd_apply(model, grad, 0.0);
  CHECK(model.output() == before);

  sgd_apply(model, grad, 0.1);
  const auto row = model.output_row(2);
  CHECK(row[0] == doctest::Approx(before[2 * 3 + 0] + 0.1).epsilon(1e-15));
  CHECK(row[1] == doctest::Approx(before[2 * 3 + 1] - 0.2).epsilon(1e-15));

  SparseGradient negated;
  negated.dim = 3;
  negated.row(MatrixTag::output, 2) = {-1.0, 2.0, -0.5};
  sgd_apply(model, negated, 0.1);
  for (size_t i = 0; i < before.size(); ++i) {
    CHECK(model.output()[i] == doctest::Approx(before[i]).epsilon(1e-15));
  }
}

TEST_CASE("sgd_apply applies the rank-one outer term to every output row") {
  EmbeddingModel model(3, 2, ModelRole::generator);
  SparseGradient grad;
  grad.dim = 2;
  grad.outer_coeffs = {1.0, -0.5, 2.0};
  grad.outer_direction = {1.0, 3.0};
  sgd_apply(model, grad, 0.1);
  CHECK(model.output_row(0)[0] == doctest::Approx(0.1));
  CHECK(model.output_row(0)[1] == doctest::Approx(0.3));
  CHECK(model.output_row(1)[0] == doctest::Approx(-0.05));
  CHECK(model.output_row(2)[1] == doctest::Approx(0.6));
}

TEST_CASE("divergence is caught, not propagated") {
  EmbeddingModel model(3, 2, ModelRole::generator);
  SparseGradient bad;
  bad.dim = 2;
  bad.row(MatrixTag::input, 0) = {std::numeric_limits<double>::infinity(),
                                  0.0};
  CHECK_THROWS_AS(sgd_apply(model, bad, 0.1), divergence_error);

  SparseGradient fine;
  fine.dim = 2;
  fine.row(MatrixTag::input, 0) = {1.0, 1.0};
  CHECK_THROWS_AS(sgd_apply(model, fine, 1e308 * 2.0), divergence_error);
  model.input_row(0)[0] = 1e308;
  CHECK_THROWS_AS(sgd_apply(model, fine, 1e308), divergence_error);
}

TEST_CASE("early stopping rule matches the worked sequence") {
  EarlyStopper stopper(3);
  CHECK(!stopper.observe(80.1));  // first observation improves on -inf
  CHECK(stopper.last_improved());
  CHECK(!stopper.observe(80.0));
  CHECK(!stopper.observe(79.9));
  CHECK(stopper.observe(79.8));  // third consecutive non-improvement: stop
  CHECK(!stopper.last_improved());

  EarlyStopper reset(2);
  reset.observe(50.0);
  CHECK(!reset.observe(49.0));
  CHECK(!reset.observe(51.0));  // improvement resets the counter
  CHECK(!reset.observe(50.5));
  CHECK(reset.observe(50.4));
}

TEST_CASE("pretrain with zero epochs leaves the state untouched") {
  const BasketDataset corpus = synthetic::pair_corpus(4, 2);
  const NoiseDistribution noise =
      build_noise_distribution(corpus, NoiseKind::uniform, 0.0);
  const auto instances =
      make_instances(corpus, InstanceMode::all_positions, 0).instances;

  TrainConfig cfg = toy_config(Objective::neg);
  cfg.epochs_pretrain = 0;
  TrainState state{EmbeddingModel::random(8, 4, 3, 1.0, ModelRole::generator),
                   std::nullopt, 0, cfg.seed, {}};
  const std::vector<double> input = state.generator.input();
  const std::vector<double> output = state.generator.output();
  pretrain(state, instances, noise, cfg);
  CHECK(state.generator.input() == input);
  CHECK(state.generator.output() == output);
}

TEST_CASE("pretrain objective is non-decreasing at nearly every epoch") {
  // Single-instance corpus; the measurement uses a frozen negative draw so
  // it tracks the model, not the draw noise. The catalog is wide enough that
  // a training negative rarely collides with the target.
  const size_t z = 100;
  std::vector<TrainingInstance> instances(1);
  instances[0].context = {0};
  instances[0].target = 1;

  BasketDataset corpus;
  auto catalog = std::make_shared<Catalog>();
  for (size_t i = 0; i < z; ++i) catalog->intern(std::to_string(i));
  corpus.catalog = catalog;
  corpus.baskets = {{0, 1}};
  const NoiseDistribution noise =
      build_noise_distribution(corpus, NoiseKind::uniform, 0.0);

  TrainConfig cfg = toy_config(Objective::neg);
  cfg.epochs_pretrain = 100;
  cfg.learning_rate = 0.05;
  cfg.dim = 4;
  cfg.k = 2;

  TrainState state{
      EmbeddingModel::random(z, cfg.dim, 5, 1.0, ModelRole::generator),
      std::nullopt, 0, cfg.seed, {}};

  NegativeDraw frozen;
  frozen.source = DrawSource::noise;
  frozen.items = {2, 3, 4};

  std::vector<double> measurements;
  const auto sink = [&](const TrainLogRecord&) {
    measurements.push_back(
        neg_loss(state.generator, instances[0], frozen).loss.value);
  };
  pretrain(state, instances, noise, cfg, sink);

  REQUIRE(measurements.size() == 100);
  int non_decreasing = 0;
  for (size_t i = 1; i < measurements.size(); ++i) {
    if (measurements[i] >= measurements[i - 1]) ++non_decreasing;
  }
  CHECK(non_decreasing >= 95);
}

TEST_CASE("two disjoint pairs pretrain to the right argmax") {
  BasketDataset corpus;
  auto catalog = std::make_shared<Catalog>();
  for (const char* t : {"a", "b", "c", "d"}) catalog->intern(t);
  corpus.catalog = catalog;
  for (int i = 0; i < 8; ++i) {
    corpus.baskets.push_back({0, 1});
    corpus.baskets.push_back({2, 3});
  }
  const NoiseDistribution noise =
      build_noise_distribution(corpus, NoiseKind::uniform, 0.0);
  const auto instances =
      make_instances(corpus, InstanceMode::all_positions, 0).instances;

  TrainConfig cfg = toy_config(Objective::neg);
  cfg.epochs_pretrain = 60;
  cfg.dim = 8;
  cfg.learning_rate = 0.1;
  TrainState state{
      EmbeddingModel::random(4, cfg.dim, 9, 1.0, ModelRole::generator),
      std::nullopt, 0, cfg.seed, {}};
  pretrain(state, instances, noise, cfg);

  const std::vector<uint32_t> ctx_a = {0};
  const CategoricalDistribution dist =
      conditional_distribution(state.generator, ctx_a);
  size_t argmax = 0;
  for (size_t i = 1; i < dist.probs.size(); ++i) {
    if (dist.probs[i] > dist.probs[argmax]) argmax = i;
  }
  CHECK(argmax == 1);  // a -> b
}

TEST_CASE("generator and discriminator are isolated during sweeps") {
  const BasketDataset corpus = synthetic::clustered_corpus(3, 5, 40, 3, 2);
  const auto instances =
      make_instances(corpus, InstanceMode::one_random, 4).instances;
  const NoiseDistribution uniform =
      build_noise_distribution(corpus, NoiseKind::uniform, 0.0);

  TrainConfig cfg = toy_config(Objective::gan_mixed);
  TrainState state{
      EmbeddingModel::random(15, cfg.dim, 1, 1.0, ModelRole::generator),
      EmbeddingModel::random(15, cfg.dim, 2, 1.0, ModelRole::discriminator),
      0, cfg.seed, {}};

  const std::vector<double> disc_in = state.discriminator->input();
  const std::vector<double> disc_out = state.discriminator->output();
  run_generator_sweep(state, instances, uniform, cfg, 0);
  CHECK(state.discriminator->input() == disc_in);
  CHECK(state.discriminator->output() == disc_out);

  const std::vector<double> gen_in = state.generator.input();
  const std::vector<double> gen_out = state.generator.output();
  run_discriminator_sweep(state, instances, cfg, 0);
  CHECK(state.generator.input() == gen_in);
  CHECK(state.generator.output() == gen_out);
}

TEST_CASE("full training is bitwise reproducible under a fixed seed") {
  const BasketDataset corpus = synthetic::clustered_corpus(3, 6, 60, 3, 7);
  const SplitResult split = split_train_test(corpus, 0.2, 3);
  const SplitDataset dataset{split.train, split.test};
  const std::vector<size_t> ks = {1, 5};

  for (Objective objective : {Objective::neg, Objective::gan_mixed}) {
    TrainConfig cfg = toy_config(objective);
    const TrainOutcome a = train(dataset, cfg, ks);
    const TrainOutcome b = train(dataset, cfg, ks);
    CHECK(a.state.generator.input() == b.state.generator.input());
    CHECK(a.state.generator.output() == b.state.generator.output());
    CHECK(a.final_generator_report.mpr == b.final_generator_report.mpr);
    if (objective == Objective::gan_mixed) {
      REQUIRE(a.state.discriminator.has_value());
      CHECK(a.state.discriminator->input() == b.state.discriminator->input());
      CHECK(a.state.discriminator->output() ==
            b.state.discriminator->output());
    }
  }
}

TEST_CASE("baseline dispatch trains a single network") {
  const BasketDataset corpus = synthetic::pair_corpus(5, 10);
  const SplitResult split = split_train_test(corpus, 0.2, 3);
  const SplitDataset dataset{split.train, split.test};
  const std::vector<size_t> ks = {1};

  TrainConfig cfg = toy_config(Objective::neg);
  const TrainOutcome outcome = train(dataset, cfg, ks);
  CHECK(!outcome.state.discriminator.has_value());
  CHECK(!outcome.pretrain_generator.has_value());
  CHECK(!outcome.final_discriminator_report.has_value());
  REQUIRE(outcome.state.history.size() == cfg.epochs_pretrain);
  for (const auto& record : outcome.state.history) {
    CHECK(record.phase == "epoch");
  }
  CHECK(outcome.state.round == cfg.epochs_pretrain);
}

TEST_CASE("adversarial dispatch trains both networks and snapshots pretrain") {
  const BasketDataset corpus = synthetic::clustered_corpus(3, 5, 50, 3, 9);
  const SplitResult split = split_train_test(corpus, 0.2, 3);
  const SplitDataset dataset{split.train, split.test};
  const std::vector<size_t> ks = {1};

  TrainConfig cfg = toy_config(Objective::gan_mixed);
  cfg.max_adversarial_rounds = 3;
  const TrainOutcome outcome = train(dataset, cfg, ks);
  CHECK(outcome.state.discriminator.has_value());
  CHECK(outcome.pretrain_generator.has_value());
  CHECK(outcome.pretrain_discriminator.has_value());
  CHECK(outcome.final_discriminator_report.has_value());
  CHECK(outcome.final_generator_report.scorer == "generator");
  CHECK(outcome.final_discriminator_report->scorer == "discriminator");
  CHECK(outcome.state.round <= cfg.max_adversarial_rounds);

  bool saw_g = false, saw_d = false, saw_eval = false;
  for (const auto& record : outcome.state.history) {
    if (record.phase == "g_sweep") saw_g = true;
    if (record.phase == "d_sweep") saw_d = true;
    if (record.phase == "eval") saw_eval = true;
  }
  CHECK(saw_g);
  CHECK(saw_d);
  CHECK(saw_eval);
}

TEST_CASE("train rejects invalid configs and degenerate datasets") {
  const BasketDataset corpus = synthetic::pair_corpus(4, 4);
  const SplitResult split = split_train_test(corpus, 0.25, 3);
  const SplitDataset dataset{split.train, split.test};
  const std::vector<size_t> ks = {1};

  TrainConfig bad = toy_config(Objective::neg);
  bad.g_steps = 0;
  CHECK_THROWS_AS(train(dataset, bad, ks), config_error);
  try {
    train(dataset, bad, ks);
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("g_steps") != std::string::npos);
  }

  SplitDataset empty_test{split.train, BasketDataset{{}, corpus.catalog}};
  CHECK_THROWS_AS(train(empty_test, toy_config(Objective::neg), ks),
                  data_error);
}

TEST_CASE("memorization: pair corpus reaches precision@1 within 200 epochs") {
  const size_t n_pairs = 10;  // 20-item catalog
  const BasketDataset corpus = synthetic::pair_corpus(n_pairs, 10);
  const SplitResult split = split_train_test(corpus, 0.1, 3);
  const SplitDataset dataset{split.train, split.test};
  const std::vector<size_t> ks = {1};

  TrainConfig cfg;
  cfg.objective = Objective::neg;
  cfg.dim = 16;
  cfg.learning_rate = 0.1;
  cfg.epochs_pretrain = 200;
  cfg.eval_every = 50;
  cfg.k = 5;
  cfg.seed = 13;
  const TrainOutcome outcome = train(dataset, cfg, ks);

  const auto planted = synthetic::pair_instances(n_pairs);
  const EvalReport report = evaluate(outcome.state.generator, planted, ks);
  CHECK(report.precision_at[0].second >= 0.95);
}
