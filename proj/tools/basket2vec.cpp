// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: prepare / train / eval / compare.
// Exit codes: 0 success, 2 config error, 3 data error, 4 numeric divergence.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "b2v/errors.hpp"
#include "b2v/eval.hpp"
#include "b2v/run_config.hpp"
#include "b2v/snapshot.hpp"
#include "b2v/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw b2v::data_error("cannot write file: " + path.string());
  out << content;
}

std::string hex64(uint64_t v) {
  std::ostringstream ss;
  ss << "0x" << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

struct LoadedDataset {
  b2v::ParseReport parse;
  b2v::SplitResult split;
};

LoadedDataset load_and_split(const b2v::RunConfig& cfg) {
  b2v::ParseOptions options;
  options.format = cfg.format;
  options.skip_id_column = cfg.csv_skip_id;
  LoadedDataset out;
  out.parse = b2v::parse_basket_path(cfg.dataset_path, options);
  out.split = b2v::split_train_test(out.parse.dataset, cfg.test_fraction,
                                    cfg.split_seed);
  return out;
}

json split_to_json(const b2v::RunConfig& cfg, const LoadedDataset& data) {
  json j;
  j["n_baskets"] = data.parse.dataset.baskets.size();
  j["test_fraction"] = cfg.test_fraction;
  j["split_seed"] = cfg.split_seed;
  j["train_indices"] = data.split.train_indices;
  j["test_indices"] = data.split.test_indices;
  return j;
}

json manifest_json(const char* command, const b2v::RunConfig& cfg,
                   const LoadedDataset& data) {
  json j;
  j["tool"] = "basket2vec";
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["input"] = {{"path", cfg.dataset_path},
                {"fnv1a64", hex64(b2v::fnv1a64_file(cfg.dataset_path))},
                {"baskets", data.parse.dataset.baskets.size()},
                {"catalog", data.parse.dataset.catalog_size()},
                {"malformed_lines", data.parse.malformed_lines}};
  j["split"] = {{"test_fraction", cfg.test_fraction},
                {"split_seed", cfg.split_seed},
                {"train_baskets", data.split.train.baskets.size()},
                {"test_baskets", data.split.test.baskets.size()}};
  j["instance_seed"] = cfg.instance_seed;
  j["train_seed"] = cfg.train.seed;
  j["resolved_config"] = "resolved_config.cfg";
  return j;
}

void save_checkpoint(const fs::path& dir, const b2v::TrainState& state,
                     const b2v::Catalog& catalog) {
  fs::create_directories(dir);
  b2v::save_model(state.generator, catalog, (dir / "generator.emb").string());
  if (state.discriminator.has_value()) {
    b2v::save_model(*state.discriminator, catalog,
                    (dir / "discriminator.emb").string());
  }
}

json log_record_json(const b2v::TrainLogRecord& r) {
  json j;
  j["round"] = r.round;
  j["phase"] = r.phase;
  j["mean_objective"] = r.mean_objective;
  j["val_mpr_generator"] = r.val_mpr_generator;        // NaN dumps as null
  j["val_mpr_discriminator"] = r.val_mpr_discriminator;
  j["seconds"] = r.seconds;
  return j;
}

int cmd_prepare(const b2v::RunConfig& cfg) {
  const LoadedDataset data = load_and_split(cfg);
  const auto& baskets = data.parse.dataset.baskets;

  std::map<size_t, size_t> histogram;
  for (const auto& b : baskets) ++histogram[b.size()];

  std::cout << "baskets:         " << baskets.size() << "\n";
  std::cout << "catalog items:   " << data.parse.dataset.catalog_size()
            << "\n";
  std::cout << "malformed lines: " << data.parse.malformed_lines << "\n";
  std::cout << "split:           " << data.split.train.baskets.size()
            << " train / " << data.split.test.baskets.size() << " test"
            << " (fraction " << cfg.test_fraction << ", seed "
            << cfg.split_seed << ")\n";
  std::cout << "basket size histogram:\n";
  for (const auto& [size, count] : histogram) {
    std::cout << "  " << std::setw(5) << size << ": " << count << "\n";
  }

  fs::create_directories(cfg.output_dir);
  json summary;
  summary["baskets"] = baskets.size();
  summary["catalog"] = data.parse.dataset.catalog_size();
  summary["malformed_lines"] = data.parse.malformed_lines;
  json hist = json::object();
  for (const auto& [size, count] : histogram) {
    hist[std::to_string(size)] = count;
  }
  summary["basket_size_histogram"] = hist;
  write_text(fs::path(cfg.output_dir) / "dataset_summary.json",
             summary.dump(2) + "\n");
  write_text(fs::path(cfg.output_dir) / "split.json",
             split_to_json(cfg, data).dump(2) + "\n");
  write_text(fs::path(cfg.output_dir) / "manifest.json",
             manifest_json("prepare", cfg, data).dump(2) + "\n");
  std::cout << "wrote dataset_summary.json, split.json and manifest.json to "
            << cfg.output_dir << "\n";
  return 0;
}

int cmd_train(const b2v::RunConfig& cfg) {
  {
    const auto errors = cfg.validate();
    if (!errors.empty()) {
      std::ostringstream msg;
      msg << "invalid configuration:";
      for (const auto& e : errors) msg << "\n  " << e;
      throw b2v::config_error(msg.str());
    }
  }

  const LoadedDataset data = load_and_split(cfg);
  const auto catalog = data.parse.dataset.catalog;
  std::cout << "loaded " << data.parse.dataset.baskets.size() << " baskets, "
            << catalog->size() << " items (" << data.parse.malformed_lines
            << " malformed lines)\n";
  std::cout << "split: " << data.split.train.baskets.size() << " train / "
            << data.split.test.baskets.size() << " test baskets\n";
  std::cout << "objective: " << b2v::to_string(cfg.train.objective)
            << "  dim: " << cfg.train.dim << "  seed: " << cfg.train.seed
            << "\n";

  const fs::path out_dir(cfg.output_dir);
  fs::create_directories(out_dir);
  fs::create_directories(out_dir / "checkpoints");
  fs::create_directories(out_dir / "final");
  fs::create_directories(out_dir / "reports");

  // Freeze the dataset location absolutely so the config replays from any
  // working directory.
  b2v::RunConfig frozen = cfg;
  frozen.dataset_path = fs::absolute(cfg.dataset_path).string();
  frozen.save((out_dir / "resolved_config.cfg").string());
  write_text(out_dir / "manifest.json",
             manifest_json("train", cfg, data).dump(2) + "\n");
  write_text(out_dir / "split.json", split_to_json(cfg, data).dump(2) + "\n");

  std::ofstream log_file(out_dir / "train_log.jsonl",
                         std::ios::binary | std::ios::trunc);

  b2v::TrainCallbacks callbacks;
  callbacks.log = [&](const b2v::TrainLogRecord& r) {
    log_file << log_record_json(r).dump() << "\n";
    std::cout << "[" << r.phase << " " << r.round << "] objective "
              << std::fixed << std::setprecision(4) << r.mean_objective;
    if (!std::isnan(r.val_mpr_generator)) {
      std::cout << "  val MPR G " << std::setprecision(2)
                << r.val_mpr_generator;
    }
    if (!std::isnan(r.val_mpr_discriminator)) {
      std::cout << " D " << std::setprecision(2) << r.val_mpr_discriminator;
    }
    std::cout << "  (" << std::setprecision(2) << r.seconds << "s)\n";
  };
  callbacks.on_eval_point = [&](const b2v::TrainState& state) {
    std::ostringstream name;
    name << "round_" << std::setw(4) << std::setfill('0') << state.round;
    save_checkpoint(out_dir / "checkpoints" / name.str(), state, *catalog);
  };
  callbacks.on_divergence = [&](const b2v::TrainState& state) {
    save_checkpoint(out_dir / "diverged", state, *catalog);
    std::cerr << "training diverged at round " << state.round
              << "; state dumped to " << (out_dir / "diverged").string()
              << "\n";
  };

  b2v::SplitDataset split{data.split.train, data.split.test};
  const b2v::TrainOutcome outcome =
      b2v::train(split, cfg.train, cfg.eval_ks, callbacks);

  if (outcome.pretrain_generator.has_value()) {
    const fs::path pre = out_dir / "checkpoints" / "pretrain";
    fs::create_directories(pre);
    b2v::save_model(*outcome.pretrain_generator, *catalog,
                    (pre / "generator.emb").string());
    b2v::save_model(*outcome.pretrain_discriminator, *catalog,
                    (pre / "discriminator.emb").string());
  }
  save_checkpoint(out_dir / "final", outcome.state, *catalog);

  const auto& g_report = outcome.final_generator_report;
  write_text(out_dir / "reports" / "final_generator.json",
             b2v::report_to_json(g_report) + "\n");
  write_text(out_dir / "reports" / "final_generator.txt",
             b2v::format_report_text(g_report));
  std::cout << "final generator (test):\n" << b2v::format_report_text(g_report);
  if (outcome.final_discriminator_report.has_value()) {
    const auto& d_report = *outcome.final_discriminator_report;
    write_text(out_dir / "reports" / "final_discriminator.json",
               b2v::report_to_json(d_report) + "\n");
    write_text(out_dir / "reports" / "final_discriminator.txt",
               b2v::format_report_text(d_report));
    std::cout << "final discriminator (test):\n"
              << b2v::format_report_text(d_report);
    std::cout << "best round by validation MPR: " << outcome.best_round
              << "\n";
  }
  std::cout << "outputs in " << cfg.output_dir << "\n";
  return 0;
}

int cmd_eval(const std::string& run_dir, const std::string& checkpoint,
             const std::vector<size_t>& ks_override,
             const std::string& out_override, int threads_override,
             bool exclude_context_items) {
  const fs::path run(run_dir);
  b2v::RunConfig cfg =
      b2v::RunConfig::from_file((run / "resolved_config.cfg").string());
  if (!ks_override.empty()) cfg.eval_ks = ks_override;
  if (threads_override > 0) cfg.train.threads = threads_override;

  const LoadedDataset data = load_and_split(cfg);
  const auto test_set = b2v::make_instances(
      data.split.test, b2v::InstanceMode::one_random, cfg.instance_seed);
  if (test_set.instances.empty()) {
    throw b2v::data_error("test split produced no instances");
  }

  fs::path ckpt_dir = run / checkpoint;
  if (!fs::exists(ckpt_dir / "generator.emb")) {
    ckpt_dir = run / "checkpoints" / checkpoint;
  }
  if (!fs::exists(ckpt_dir / "generator.emb")) {
    throw b2v::data_error("no generator.emb under " + (run / checkpoint).string() +
                          " or " + ckpt_dir.string());
  }

  const fs::path out_dir =
      out_override.empty() ? run / "reports" : fs::path(out_override);
  fs::create_directories(out_dir);

  std::vector<std::pair<std::string, fs::path>> models;
  models.emplace_back("generator", ckpt_dir / "generator.emb");
  if (fs::exists(ckpt_dir / "discriminator.emb")) {
    models.emplace_back("discriminator", ckpt_dir / "discriminator.emb");
  }

  b2v::EvalOptions eval_options;
  eval_options.exclude_context_items = exclude_context_items;

  for (const auto& [name, path] : models) {
    const b2v::LoadedModel loaded = b2v::load_model(path.string());
    if (loaded.catalog->items() != data.parse.dataset.catalog->items()) {
      throw b2v::data_error("catalog mismatch between checkpoint " +
                            path.string() + " and dataset " +
                            cfg.dataset_path);
    }
    const b2v::EvalReport report =
        b2v::evaluate(loaded.model, test_set.instances, cfg.eval_ks,
                      cfg.train.threads, eval_options);
    const std::string stem = "eval_" + name;
    write_text(out_dir / (stem + ".json"), b2v::report_to_json(report) + "\n");
    write_text(out_dir / (stem + ".txt"), b2v::format_report_text(report));
    std::cout << b2v::format_report_text(report) << "\n";
  }

  json manifest = manifest_json("eval", cfg, data);
  manifest["checkpoint"] = ckpt_dir.string();
  manifest["eval_ks"] = cfg.eval_ks;
  manifest["exclude_context_items"] = exclude_context_items;
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  std::cout << "reports in " << out_dir.string() << "\n";
  return 0;
}

int cmd_compare(const std::vector<std::string>& report_paths, size_t resamples,
                uint64_t seed, const std::string& out_path) {
  std::vector<b2v::EvalReport> reports;
  for (const auto& path : report_paths) {
    reports.push_back(b2v::report_from_json_file(path));
  }

  // Table-style overview, one row per method.
  std::cout << std::left << std::setw(40) << "method" << std::setw(14)
            << "precision@1" << "MPR\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    double p1 = std::numeric_limits<double>::quiet_NaN();
    for (const auto& [k, v] : reports[i].precision_at) {
      if (k == 1) p1 = 100.0 * v;
    }
    std::cout << std::left << std::setw(40) << report_paths[i] << std::fixed
              << std::setprecision(2) << std::setw(14) << p1 << reports[i].mpr
              << "\n";
  }
  std::cout << "\n";

  json out = json::array();
  for (size_t i = 1; i < reports.size(); ++i) {
    const auto summary =
        b2v::compare_reports(reports[0], reports[i], resamples, seed);
    std::cout << b2v::format_comparison_text(report_paths[0], report_paths[i],
                                             summary)
              << "\n";
    json j;
    j["baseline"] = report_paths[0];
    j["candidate"] = report_paths[i];
    j["resamples"] = resamples;
    j["bootstrap_seed"] = seed;
    j["n_instances"] = summary.n_instances;
    j["mpr"] = {{"baseline", summary.mpr.baseline},
                {"candidate", summary.mpr.candidate},
                {"delta", summary.mpr.delta},
                {"ci_lo", summary.mpr.ci_lo},
                {"ci_hi", summary.mpr.ci_hi}};
    json prec = json::object();
    for (const auto& [k, d] : summary.precision_at) {
      prec[std::to_string(k)] = {{"baseline", d.baseline},
                                 {"candidate", d.candidate},
                                 {"delta", d.delta},
                                 {"ci_lo", d.ci_lo},
                                 {"ci_hi", d.ci_hi}};
    }
    j["precision_at"] = prec;
    out.push_back(j);
  }
  if (!out_path.empty()) {
    write_text(out_path, out.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"item-embedding training and evaluation for basket completion"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  // Shared option state. Options are applied over the config file only when
  // the flag was actually passed.
  std::string config_path;
  b2v::RunConfig flags;
  std::string format_name = "whitespace";
  std::string objective_name = "neg";
  std::string noise_name = "unigram";

  auto add_dataset_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration file");
    cmd->add_option("-i,--dataset", flags.dataset_path, "basket file");
    cmd->add_option("--format", format_name, "whitespace or csv");
    cmd->add_flag("--csv-skip-id", flags.csv_skip_id,
                  "skip a leading id column in csv input");
    cmd->add_option("--test-fraction", flags.test_fraction,
                    "held-out basket fraction");
    cmd->add_option("--split-seed", flags.split_seed, "train/test split seed");
    cmd->add_option("--instance-seed", flags.instance_seed,
                    "test one-random removal seed");
    cmd->add_option("-o,--out", flags.output_dir, "output directory");
  };

  CLI::App* prepare = app.add_subcommand(
      "prepare", "ingest a basket file and report dataset statistics");
  add_dataset_options(prepare);

  CLI::App* train = app.add_subcommand("train", "train a model");
  add_dataset_options(train);
  train->add_option("--objective", objective_name,
                    "neg, nce, gan_basic or gan_mixed");
  train->add_option("--dim", flags.train.dim, "embedding dimensionality");
  train->add_option("--init-scale", flags.train.init_scale,
                    "init range is [-scale/dim, +scale/dim]");
  train->add_option("--learning-rate", flags.train.learning_rate,
                    "baseline/pretrain learning rate");
  train->add_option("--lr-floor-ratio", flags.train.lr_floor_ratio,
                    "final fraction of the learning rate after decay");
  train->add_option("--adversarial-learning-rate",
                    flags.train.adversarial_learning_rate,
                    "learning rate for adversarial rounds");
  train->add_option("--epochs-pretrain", flags.train.epochs_pretrain,
                    "baseline epochs / adversarial pre-training epochs");
  train->add_option("--max-rounds", flags.train.max_adversarial_rounds,
                    "adversarial round cap");
  train->add_option("--g-steps", flags.train.g_steps,
                    "generator sweeps per round");
  train->add_option("--d-steps", flags.train.d_steps,
                    "discriminator sweeps per round");
  train->add_option("-k", flags.train.k, "negatives per instance");
  train->add_option("-m", flags.train.m, "generator samples per instance");
  train->add_option("--batch-size", flags.train.batch_size,
                    "gradient batch size (1 = online SGD)");
  train->add_option("--seed", flags.train.seed, "training seed");
  train->add_option("--noise", noise_name, "uniform or unigram");
  train->add_option("--noise-power", flags.train.noise_power,
                    "unigram count exponent");
  train->add_option("--mix-weight", flags.train.mix_weight,
                    "reward share of the mixed generator loss");
  train->add_option("--eval-every", flags.train.eval_every,
                    "evaluation cadence in rounds/epochs");
  train->add_option("--patience", flags.train.patience,
                    "non-improving evaluations before stopping");
  train->add_option("--validation-fraction", flags.train.validation_fraction,
                    "train baskets held out for validation");
  train->add_option("--threads", flags.train.threads,
                    "parallel kernel threads (1 = serial reference)");
  std::string ks_spec;
  train->add_option("--eval-ks", ks_spec, "comma-separated precision ks");

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate a checkpoint on the test split");
  std::string run_dir, checkpoint_name = "final", eval_out;
  std::vector<size_t> eval_ks_override;
  int eval_threads = 0;
  bool exclude_context_items = false;
  eval_cmd->add_option("--run", run_dir, "training output directory")
      ->required();
  eval_cmd->add_option("--checkpoint", checkpoint_name,
                       "checkpoint name (final, pretrain, round_0003, ...)");
  eval_cmd->add_option("--ks", eval_ks_override,
                       "precision ks (overrides the run config)");
  eval_cmd->add_option("-o,--out", eval_out, "report output directory");
  eval_cmd->add_option("--threads", eval_threads, "parallel eval threads");
  eval_cmd->add_flag("--exclude-context-items", exclude_context_items,
                     "drop the context's items from the ranked candidates");

  CLI::App* compare =
      app.add_subcommand("compare", "compare evaluation reports");
  std::vector<std::string> report_paths;
  size_t resamples = 1000;
  uint64_t compare_seed = 7;
  std::string compare_out;
  compare
      ->add_option("reports", report_paths,
                   "report json files; the first is the baseline")
      ->expected(-2);
  compare->add_option("--resamples", resamples, "bootstrap resamples");
  compare->add_option("--seed", compare_seed, "bootstrap seed");
  compare->add_option("-o,--out", compare_out, "write comparison json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    // Assemble the effective config: file first, then explicit flags.
    auto resolve = [&](CLI::App* cmd) {
      b2v::RunConfig cfg;
      if (cmd->count("--config")) {
        cfg = b2v::RunConfig::from_file(config_path);
      }
      auto passed = [&](const std::string& name) {
        return cmd->count(name) > 0;
      };
      if (passed("--dataset")) cfg.dataset_path = flags.dataset_path;
      if (passed("--format")) {
        if (format_name == "whitespace") {
          cfg.format = b2v::BasketFormat::whitespace;
        } else if (format_name == "csv") {
          cfg.format = b2v::BasketFormat::csv;
        } else {
          throw b2v::config_error("format: expected whitespace or csv");
        }
      }
      if (passed("--csv-skip-id")) cfg.csv_skip_id = flags.csv_skip_id;
      if (passed("--test-fraction")) cfg.test_fraction = flags.test_fraction;
      if (passed("--split-seed")) cfg.split_seed = flags.split_seed;
      if (passed("--instance-seed")) {
        cfg.instance_seed = flags.instance_seed;
      }
      if (passed("--out")) cfg.output_dir = flags.output_dir;

      if (cmd == train) {
        if (passed("--objective")) {
          const auto obj = b2v::objective_from_string(objective_name);
          if (!obj) {
            throw b2v::config_error(
                "objective: expected neg, nce, gan_basic or gan_mixed");
          }
          cfg.train.objective = *obj;
        }
        if (passed("--dim")) cfg.train.dim = flags.train.dim;
        if (passed("--init-scale")) cfg.train.init_scale = flags.train.init_scale;
        if (passed("--learning-rate")) {
          cfg.train.learning_rate = flags.train.learning_rate;
        }
        if (passed("--lr-floor-ratio")) {
          cfg.train.lr_floor_ratio = flags.train.lr_floor_ratio;
        }
        if (passed("--adversarial-learning-rate")) {
          cfg.train.adversarial_learning_rate =
              flags.train.adversarial_learning_rate;
        }
        if (passed("--epochs-pretrain")) {
          cfg.train.epochs_pretrain = flags.train.epochs_pretrain;
        }
        if (passed("--max-rounds")) {
          cfg.train.max_adversarial_rounds =
              flags.train.max_adversarial_rounds;
        }
        if (passed("--g-steps")) cfg.train.g_steps = flags.train.g_steps;
        if (passed("--d-steps")) cfg.train.d_steps = flags.train.d_steps;
        if (passed("-k")) cfg.train.k = flags.train.k;
        if (passed("-m")) cfg.train.m = flags.train.m;
        if (passed("--batch-size")) {
          cfg.train.batch_size = flags.train.batch_size;
        }
        if (passed("--seed")) cfg.train.seed = flags.train.seed;
        if (passed("--noise")) {
          if (noise_name == "uniform") {
            cfg.train.noise_kind = b2v::NoiseKind::uniform;
          } else if (noise_name == "unigram") {
            cfg.train.noise_kind = b2v::NoiseKind::unigram;
          } else {
            throw b2v::config_error("noise: expected uniform or unigram");
          }
        }
        if (passed("--noise-power")) {
          cfg.train.noise_power = flags.train.noise_power;
        }
        if (passed("--mix-weight")) {
          cfg.train.mix_weight = flags.train.mix_weight;
        }
        if (passed("--eval-every")) {
          cfg.train.eval_every = flags.train.eval_every;
        }
        if (passed("--patience")) cfg.train.patience = flags.train.patience;
        if (passed("--validation-fraction")) {
          cfg.train.validation_fraction = flags.train.validation_fraction;
        }
        if (passed("--threads")) cfg.train.threads = flags.train.threads;
        if (passed("--eval-ks")) {
          cfg.eval_ks.clear();
          std::stringstream ss(ks_spec);
          std::string part;
          while (std::getline(ss, part, ',')) {
            if (!part.empty()) cfg.eval_ks.push_back(std::stoul(part));
          }
        }
      }
      cfg.train.eval_instance_seed = cfg.instance_seed;
      return cfg;
    };

    if (prepare->parsed()) {
      b2v::RunConfig cfg = resolve(prepare);
      if (cfg.dataset_path.empty()) {
        throw b2v::config_error("dataset: path is required");
      }
      return cmd_prepare(cfg);
    }
    if (train->parsed()) {
      return cmd_train(resolve(train));
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(run_dir, checkpoint_name, eval_ks_override, eval_out,
                      eval_threads, exclude_context_items);
    }
    if (compare->parsed()) {
      return cmd_compare(report_paths, resamples, compare_seed, compare_out);
    }
  } catch (const b2v::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const b2v::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const b2v::divergence_error& e) {
    std::cerr << "numeric divergence: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
