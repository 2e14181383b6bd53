// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include <json.hpp>

#include "b2v/errors.hpp"
#include "b2v/eval.hpp"

namespace b2v {

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["scorer"] = report.scorer;
  j["n_instances"] = report.n_instances;
  j["mpr"] = report.mpr;
  nlohmann::json prec = nlohmann::json::object();
  for (const auto& [k, v] : report.precision_at) {
    prec[std::to_string(k)] = v;
  }
  j["precision_at"] = prec;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& rec : report.per_instance) {
    rows.push_back({{"id", rec.id},
                    {"basket", rec.basket},
                    {"pr", rec.pr},
                    {"rank", rec.rank}});
  }
  j["per_instance"] = rows;
  return j.dump(2);
}

EvalReport report_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open report file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw data_error("malformed report json in " + path + ": " + e.what());
  }
  EvalReport report;
  try {
    report.scorer = j.at("scorer").get<std::string>();
    report.n_instances = j.at("n_instances").get<size_t>();
    report.mpr = j.at("mpr").get<double>();
    for (const auto& [key, value] : j.at("precision_at").items()) {
      report.precision_at.emplace_back(std::stoul(key), value.get<double>());
    }
    std::sort(report.precision_at.begin(), report.precision_at.end());
    for (const auto& row : j.at("per_instance")) {
      EvalReport::InstanceRecord rec;
      rec.id = row.at("id").get<uint32_t>();
      rec.basket = row.at("basket").get<uint32_t>();
      rec.pr = row.at("pr").get<double>();
      rec.rank = row.at("rank").get<uint32_t>();
      report.per_instance.push_back(rec);
    }
  } catch (const nlohmann::json::exception& e) {
    throw data_error("report json missing fields in " + path + ": " +
                     e.what());
  }
  return report;
}

}  // namespace b2v
