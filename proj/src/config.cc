// Copyright 2026 The privest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privest/config.h"

#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "privest/io.h"
#include "privest/multi_sensor.h"

namespace privest {

namespace {

using Json = nlohmann::json;

absl::Status TypeError(absl::string_view where, absl::string_view expected) {
  return absl::InvalidArgumentError(
      absl::StrCat("config: ", where, " must be ", expected));
}

absl::Status ReadNumber(const Json& obj, const char* key, double* out) {
  if (!obj.contains(key)) return absl::OkStatus();
  if (!obj[key].is_number()) return TypeError(key, "a number");
  *out = obj[key].get<double>();
  return absl::OkStatus();
}

template <typename Int>
absl::Status ReadInteger(const Json& obj, const char* key, Int* out) {
  if (!obj.contains(key)) return absl::OkStatus();
  if (!obj[key].is_number_integer()) return TypeError(key, "an integer");
  *out = obj[key].get<Int>();
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> NumberArray(const Json& v,
                                                absl::string_view where) {
  if (!v.is_array()) return TypeError(where, "an array of numbers");
  std::vector<double> out;
  for (const Json& e : v) {
    if (!e.is_number()) return TypeError(where, "an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Eigen::VectorXd ToVector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

absl::StatusOr<JointPrior> ParsePrior(const Json& p) {
  if (!p.is_object()) return TypeError("prior", "an object");
  if (!p.contains("x_support") || !p.contains("y_support")) {
    return absl::InvalidArgumentError(
        "config: prior needs x_support and y_support");
  }
  auto xs = NumberArray(p["x_support"], "prior.x_support");
  if (!xs.ok()) return xs.status();
  auto ys = NumberArray(p["y_support"], "prior.y_support");
  if (!ys.ok()) return ys.status();
  if (p.contains("pmf")) {
    const Json& rows = p["pmf"];
    if (!rows.is_array() || rows.size() != xs->size()) {
      return TypeError("prior.pmf", "an n x m array of arrays");
    }
    Eigen::MatrixXd pmf(xs->size(), ys->size());
    for (size_t j = 0; j < rows.size(); ++j) {
      auto row = NumberArray(rows[j], "prior.pmf row");
      if (!row.ok()) return row.status();
      if (row->size() != ys->size()) {
        return TypeError("prior.pmf", "an n x m array of arrays");
      }
      for (size_t i = 0; i < row->size(); ++i) pmf(j, i) = (*row)[i];
    }
    return MakeJointPrior(*std::move(xs), *std::move(ys), std::move(pmf));
  }
  if (!p.contains("x_marginal") || !p.contains("y_marginal")) {
    return absl::InvalidArgumentError(
        "config: prior needs pmf, or x_marginal and y_marginal");
  }
  auto px = NumberArray(p["x_marginal"], "prior.x_marginal");
  if (!px.ok()) return px.status();
  auto py = NumberArray(p["y_marginal"], "prior.y_marginal");
  if (!py.ok()) return py.status();
  if (px->size() != xs->size() || py->size() != ys->size()) {
    return absl::InvalidArgumentError(
        "config: marginal lengths must match the supports");
  }
  return MakeProductPrior(*std::move(xs), ToVector(*px), *std::move(ys),
                          ToVector(*py));
}

absl::Status ParseSolver(const Json& s, SolverConfig* cfg) {
  if (!s.is_object()) return TypeError("solver", "an object");
  if (auto st = ReadNumber(s, "h0_bits", &cfg->h0_bits); !st.ok()) return st;
  if (auto st = ReadNumber(s, "step_init", &cfg->step_init); !st.ok()) {
    return st;
  }
  if (auto st = ReadNumber(s, "tol_kkt", &cfg->tol_kkt); !st.ok()) return st;
  if (auto st = ReadNumber(s, "tol_primal", &cfg->tol_primal); !st.ok()) {
    return st;
  }
  if (auto st = ReadInteger(s, "max_iters", &cfg->max_iters); !st.ok()) {
    return st;
  }
  if (s.contains("mu_bracket")) {
    auto b = NumberArray(s["mu_bracket"], "solver.mu_bracket");
    if (!b.ok()) return b.status();
    if (b->size() != 2) return TypeError("solver.mu_bracket", "[lo, hi]");
    cfg->mu_lo = (*b)[0];
    cfg->mu_hi = (*b)[1];
  }
  return absl::OkStatus();
}

absl::Status ParseExperiment(const Json& e, ExperimentConfig* cfg) {
  if (!e.is_object()) return TypeError("experiment", "an object");
  if (e.contains("sensor_counts")) {
    if (!e["sensor_counts"].is_array()) {
      return TypeError("experiment.sensor_counts", "an array of integers");
    }
    cfg->sensor_counts.clear();
    for (const Json& v : e["sensor_counts"]) {
      if (!v.is_number_integer()) {
        return TypeError("experiment.sensor_counts", "an array of integers");
      }
      cfg->sensor_counts.push_back(v.get<int>());
    }
  }
  if (auto s = ReadInteger(e, "trials", &cfg->trials); !s.ok()) return s;
  if (e.contains("seed")) {
    if (!e["seed"].is_number_unsigned()) {
      return TypeError("experiment.seed", "a nonnegative integer");
    }
    cfg->seed = e["seed"].get<std::uint64_t>();
  }
  return ReadInteger(e, "exact_limit", &cfg->exact_limit);
}

}  // namespace

absl::StatusOr<RunConfig> ParseConfig(absl::string_view json_text) {
  const Json doc = Json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError("config: not valid JSON");
  }
  if (!doc.is_object()) return TypeError("top level", "an object");
  RunConfig cfg;
  if (!doc.contains("model") || !doc["model"].is_object()) {
    return absl::InvalidArgumentError("config: missing model object");
  }
  const Json& model = doc["model"];
  for (const char* key : {"a", "b", "c", "noise_std"}) {
    if (!model.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("config: model.", key, " is required"));
    }
  }
  if (auto s = ReadNumber(model, "a", &cfg.model.a); !s.ok()) return s;
  if (auto s = ReadNumber(model, "b", &cfg.model.b); !s.ok()) return s;
  if (auto s = ReadNumber(model, "c", &cfg.model.c); !s.ok()) return s;
  if (auto s = ReadNumber(model, "noise_std", &cfg.model.noise_std); !s.ok()) {
    return s;
  }
  if (!doc.contains("prior")) {
    return absl::InvalidArgumentError("config: missing prior object");
  }
  auto prior = ParsePrior(doc["prior"]);
  if (!prior.ok()) return prior.status();
  cfg.model.prior = *std::move(prior);
  if (auto s = ValidateSensorModel(cfg.model); !s.ok()) return s;

  if (doc.contains("partition")) {
    const Json& p = doc["partition"];
    if (!p.is_object() || !p.contains("edges")) {
      return TypeError("partition", "an object with edges");
    }
    auto edges = NumberArray(p["edges"], "partition.edges");
    if (!edges.ok()) return edges.status();
    auto partition = MakePartition(*std::move(edges));
    if (!partition.ok()) return partition.status();
    cfg.partition = *std::move(partition);
  } else {
    auto partition = MidpointPartition(cfg.model);
    if (!partition.ok()) return partition.status();
    cfg.partition = *std::move(partition);
  }

  if (auto s = ReadInteger(doc, "sensors", &cfg.sensors); !s.ok()) return s;
  if (cfg.sensors < 1) return TypeError("sensors", "at least 1");
  if (auto s = ReadInteger(doc, "count_cap", &cfg.count_cap); !s.ok()) {
    return s;
  }
  if (auto s = ReadNumber(doc, "pp_residual_tol", &cfg.pp_residual_tol);
      !s.ok()) {
    return s;
  }
  if (doc.contains("solver")) {
    if (auto s = ParseSolver(doc["solver"], &cfg.solver); !s.ok()) return s;
  }

  cfg.experiment.model = cfg.model;
  cfg.experiment.partition = cfg.partition;
  cfg.experiment.count_cap = cfg.count_cap;
  cfg.experiment.pp_residual_tol = cfg.pp_residual_tol;
  cfg.experiment.sensor_counts = {cfg.sensors};
  if (doc.contains("experiment")) {
    if (auto s = ParseExperiment(doc["experiment"], &cfg.experiment);
        !s.ok()) {
      return s;
    }
  }
  return cfg;
}

absl::StatusOr<RunConfig> LoadConfig(const std::filesystem::path& path) {
  auto text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  return ParseConfig(*text);
}

absl::StatusOr<Channel> BuildRunChannel(const RunConfig& cfg) {
  auto base = BuildChannel(cfg.model, cfg.partition);
  if (!base.ok() || cfg.sensors == 1) return base;
  auto alphabet =
      EnumerateCounts(cfg.sensors, cfg.partition.size(), cfg.count_cap);
  if (!alphabet.ok()) return alphabet.status();
  return CountChannel(*base, *alphabet);
}

std::string ReferenceConfigJson() {
  const SensorModel model = ReferenceSensorModel();
  nlohmann::ordered_json doc;
  doc["model"] = {{"a", model.a},
                  {"b", model.b},
                  {"c", model.c},
                  {"noise_std", model.noise_std}};
  nlohmann::ordered_json pmf = nlohmann::ordered_json::array();
  for (int j = 0; j < model.prior.n(); ++j) {
    std::vector<double> row(model.prior.m());
    for (int i = 0; i < model.prior.m(); ++i) row[i] = model.prior.pmf(j, i);
    pmf.push_back(row);
  }
  doc["prior"] = {{"x_support", model.prior.x_support},
                  {"y_support", model.prior.y_support},
                  {"pmf", pmf}};
  doc["partition"] = {{"edges", ReferencePartition().edges}};
  doc["sensors"] = 1;
  doc["count_cap"] = kDefaultCountCap;
  doc["pp_residual_tol"] = 1e-9;
  doc["solver"] = {{"h0_bits", 0.0},      {"step_init", 1.0},
                   {"tol_kkt", 1e-6},     {"tol_primal", 1e-9},
                   {"max_iters", 50000},  {"mu_bracket", {0.0, 1.0}}};
  doc["experiment"] = {{"sensor_counts", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
                       {"trials", 100000},
                       {"seed", 2018},
                       {"exact_limit", 1000000}};
  return doc.dump(2) + "\n";
}

}  // namespace privest
