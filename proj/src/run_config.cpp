// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "b2v/errors.hpp"

namespace b2v {

const char* to_string(BasketFormat format) {
  return format == BasketFormat::whitespace ? "whitespace" : "csv";
}

const char* to_string(NoiseKind kind) {
  return kind == NoiseKind::uniform ? "uniform" : "unigram";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    throw config_error(key + ": not a number: '" + value + "'");
  }
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
  uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw config_error(key + ": not a non-negative integer: '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw config_error(key + ": expected true/false: '" + value + "'");
}

std::vector<size_t> parse_ks(const std::string& key,
                             const std::string& value) {
  std::vector<size_t> ks;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    ks.push_back(static_cast<size_t>(parse_u64(key, part)));
  }
  if (ks.empty()) throw config_error(key + ": expected at least one k");
  return ks;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "config_version") {
      cfg.config_version = static_cast<uint32_t>(parse_u64(key, value));
      if (cfg.config_version != 1) {
        throw config_error("config_version: unsupported version " + value);
      }
    } else if (key == "dataset") {
      cfg.dataset_path = value;
    } else if (key == "format") {
      if (value == "whitespace") cfg.format = BasketFormat::whitespace;
      else if (value == "csv") cfg.format = BasketFormat::csv;
      else throw config_error("format: expected whitespace or csv");
    } else if (key == "csv_skip_id") {
      cfg.csv_skip_id = parse_bool(key, value);
    } else if (key == "test_fraction") {
      cfg.test_fraction = parse_double(key, value);
    } else if (key == "split_seed") {
      cfg.split_seed = parse_u64(key, value);
    } else if (key == "instance_seed") {
      cfg.instance_seed = parse_u64(key, value);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "eval_ks") {
      cfg.eval_ks = parse_ks(key, value);
    } else if (key == "objective") {
      const auto obj = objective_from_string(value);
      if (!obj) {
        throw config_error("objective: expected neg, nce, gan_basic or "
                           "gan_mixed, got '" + value + "'");
      }
      cfg.train.objective = *obj;
    } else if (key == "dim") {
      cfg.train.dim = parse_u64(key, value);
    } else if (key == "init_scale") {
      cfg.train.init_scale = parse_double(key, value);
    } else if (key == "learning_rate") {
      cfg.train.learning_rate = parse_double(key, value);
    } else if (key == "lr_floor_ratio") {
      cfg.train.lr_floor_ratio = parse_double(key, value);
    } else if (key == "adversarial_learning_rate") {
      cfg.train.adversarial_learning_rate = parse_double(key, value);
    } else if (key == "epochs_pretrain") {
      cfg.train.epochs_pretrain = parse_u64(key, value);
    } else if (key == "max_adversarial_rounds") {
      cfg.train.max_adversarial_rounds = parse_u64(key, value);
    } else if (key == "g_steps") {
      cfg.train.g_steps = parse_u64(key, value);
    } else if (key == "d_steps") {
      cfg.train.d_steps = parse_u64(key, value);
    } else if (key == "k") {
      cfg.train.k = parse_u64(key, value);
    } else if (key == "m") {
      cfg.train.m = parse_u64(key, value);
    } else if (key == "batch_size") {
      cfg.train.batch_size = parse_u64(key, value);
    } else if (key == "seed") {
      cfg.train.seed = parse_u64(key, value);
    } else if (key == "noise") {
      if (value == "uniform") cfg.train.noise_kind = NoiseKind::uniform;
      else if (value == "unigram") cfg.train.noise_kind = NoiseKind::unigram;
      else throw config_error("noise: expected uniform or unigram");
    } else if (key == "noise_power") {
      cfg.train.noise_power = parse_double(key, value);
    } else if (key == "mix_weight") {
      cfg.train.mix_weight = parse_double(key, value);
    } else if (key == "eval_every") {
      cfg.train.eval_every = parse_u64(key, value);
    } else if (key == "patience") {
      cfg.train.patience = parse_u64(key, value);
    } else if (key == "validation_fraction") {
      cfg.train.validation_fraction = parse_double(key, value);
    } else if (key == "threads") {
      cfg.train.threads = static_cast<int>(parse_u64(key, value));
    } else {
      throw config_error("unknown config key: '" + key + "'");
    }
  }
  cfg.train.eval_instance_seed = cfg.instance_seed;
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

std::string RunConfig::to_string() const {
  std::ostringstream out;
  out << "# basket2vec run configuration (all keys explicit)\n";
  out << "config_version = " << config_version << "\n";
  out << "dataset = " << dataset_path << "\n";
  out << "format = " << b2v::to_string(format) << "\n";
  out << "csv_skip_id = " << (csv_skip_id ? "true" : "false") << "\n";
  out << "test_fraction = " << format_double(test_fraction) << "\n";
  out << "split_seed = " << split_seed << "\n";
  out << "instance_seed = " << instance_seed << "\n";
  out << "output_dir = " << output_dir << "\n";
  out << "eval_ks = ";
  for (size_t i = 0; i < eval_ks.size(); ++i) {
    if (i) out << ",";
    out << eval_ks[i];
  }
  out << "\n";
  out << "objective = " << b2v::to_string(train.objective) << "\n";
  out << "dim = " << train.dim << "\n";
  out << "init_scale = " << format_double(train.init_scale) << "\n";
  out << "learning_rate = " << format_double(train.learning_rate) << "\n";
  out << "lr_floor_ratio = " << format_double(train.lr_floor_ratio) << "\n";
  out << "adversarial_learning_rate = "
      << format_double(train.adversarial_learning_rate) << "\n";
  out << "epochs_pretrain = " << train.epochs_pretrain << "\n";
  out << "max_adversarial_rounds = " << train.max_adversarial_rounds << "\n";
  out << "g_steps = " << train.g_steps << "\n";
  out << "d_steps = " << train.d_steps << "\n";
  out << "k = " << train.k << "\n";
  out << "m = " << train.m << "\n";
  out << "batch_size = " << train.batch_size << "\n";
  out << "seed = " << train.seed << "\n";
  out << "noise = " << b2v::to_string(train.noise_kind) << "\n";
  out << "noise_power = " << format_double(train.noise_power) << "\n";
  out << "mix_weight = " << format_double(train.mix_weight) << "\n";
  out << "eval_every = " << train.eval_every << "\n";
  out << "patience = " << train.patience << "\n";
  out << "validation_fraction = " << format_double(train.validation_fraction)
      << "\n";
  out << "threads = " << train.threads << "\n";
  return out.str();
}

void RunConfig::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw data_error("cannot write config file: " + path);
  out << to_string();
}

std::vector<std::string> RunConfig::validate() const {
  std::vector<std::string> errors = train.validate();
  if (dataset_path.empty()) errors.push_back("dataset: path is required");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    errors.push_back("test_fraction: must be in (0, 1)");
  }
  if (eval_ks.empty()) errors.push_back("eval_ks: need at least one k");
  for (size_t k : eval_ks) {
    if (k < 1) errors.push_back("eval_ks: every k must be >= 1");
  }
  if (output_dir.empty()) errors.push_back("output_dir: path is required");
  return errors;
}

uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open file for hashing: " + path);
  uint64_t hash = 14695981039346656037ull;
  char buffer[1 << 16];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const auto got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  return hash;
}

}  // namespace b2v
