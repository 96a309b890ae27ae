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

#ifndef PRIVEST_CONFIG_H_
#define PRIVEST_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "privest/channel.h"
#include "privest/experiments.h"
#include "privest/model.h"
#include "privest/privacy_solver.h"

namespace privest {

// Everything a CLI run needs, read from one JSON document:
//
//   {
//     "model": {"a": 0.6, "b": 0.4, "c": 0.0, "noise_std": 0.1},
//     "prior": {"x_support": [0, 1], "y_support": [0, 1],
//               "pmf": [[0.35, 0.35], [0.15, 0.15]]},
//     "partition": {"edges": [0.2, 0.5, 0.8]},
//     "sensors": 1,
//     "solver": {"h0_bits": 0.5, "tol_kkt": 1e-6},
//     "experiment": {"sensor_counts": [1, 2, 3], "trials": 100000,
//                    "seed": 2018}
//   }
//
// "prior" may give "x_marginal" and "y_marginal" instead of "pmf" for
// independent X and Y. Without "partition" the midpoint partition of the
// conditional means is used. Every other section is optional.
struct RunConfig {
  SensorModel model;
  Partition partition;
  int sensors = 1;
  std::int64_t count_cap = kDefaultCountCap;
  double pp_residual_tol = 1e-9;
  SolverConfig solver;
  ExperimentConfig experiment;
};

absl::StatusOr<RunConfig> ParseConfig(absl::string_view json_text);
absl::StatusOr<RunConfig> LoadConfig(const std::filesystem::path& path);

// The single-sensor channel for sensors == 1, the count channel otherwise.
absl::StatusOr<Channel> BuildRunChannel(const RunConfig& cfg);

// JSON text of the reference experiment, in the format ParseConfig reads.
std::string ReferenceConfigJson();

}  // namespace privest

#endif  // PRIVEST_CONFIG_H_
