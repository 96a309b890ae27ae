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

#ifndef PRIVEST_EXPERIMENTS_H_
#define PRIVEST_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privest/channel.h"
#include "privest/model.h"
#include "privest/multi_sensor.h"
#include "privest/privacy_solver.h"

namespace privest {

struct ExperimentConfig {
  SensorModel model;
  Partition partition;
  std::vector<int> sensor_counts;
  std::int64_t trials = 100000;
  std::uint64_t seed = 2018;
  std::int64_t count_cap = kDefaultCountCap;
  // Exact enumeration of the oblivious baseline up to m^M vectors.
  std::int64_t exact_limit = 1000000;
  double pp_residual_tol = 1e-9;
};

absl::Status ValidateExperimentConfig(const ExperimentConfig& cfg);

// Reference sensor model and partition with 1..10 sensors.
ExperimentConfig ReferenceExperiment();

struct ObliviousRow {
  int sensors = 0;
  double error_x = 0.0;  // error of the user's MAP estimate of X
  double sigma = 0.0;    // binomial standard error; 0 when exact
  bool exact = true;
};

// Each sensor reveals its own MAP estimate of Y; the user forms the MAP
// estimate of X from the M revealed values. Exact over the m^M output vectors
// when that is at most exact_limit, simulated with `trials` draws otherwise.
absl::StatusOr<std::vector<ObliviousRow>> RunObliviousBaseline(
    const ExperimentConfig& cfg);

struct PerfectRow {
  int sensors = 0;
  int symbols = 0;
  double err_pp = 0.0;         // perfect-privacy estimator, analytic
  double err_pp_mc = 0.0;      // same, simulated
  double err_oblivious = 0.0;  // unconstrained MAP on the count vector
  double err_oblivious_mc = 0.0;
  double gap = 0.0;  // err_pp - err_oblivious
  double mi_pp_bits = 0.0;
  double pp_residual = 0.0;
  bool pp_agrees = false;         // analytic within 3 sigma of simulation
  bool oblivious_agrees = false;
  bool lp_unique = true;
  Eigen::MatrixXd x_given_output;  // n x m empirical P(X | Yhat) for pp
  Eigen::VectorXd output_freq;     // m
};

absl::StatusOr<std::vector<PerfectRow>> RunPerfectPrivacyExperiment(
    const ExperimentConfig& cfg);

struct SweepRow {
  double h0_bits = 0.0;
  double cond_entropy_bits = 0.0;
  double error_prob = 0.0;
  double mu = 0.0;
  double kkt_residual = 0.0;
  bool certified = false;
  bool active = false;
};

// Solves the privacy-aware program at h0 = k H(X) / points, k = 0..points-1.
absl::StatusOr<std::vector<SweepRow>> RunPrivacySweep(const Channel& ch,
                                                      const SolverConfig& base,
                                                      int points = 10);

// Tables are written as CSV plus a whitespace-separated .dat twin for
// gnuplot. Output depends only on the inputs, never on wall-clock state.
absl::Status WriteObliviousTables(const std::vector<ObliviousRow>& rows,
                                  const ExperimentConfig& cfg,
                                  const std::filesystem::path& dir);
absl::Status WritePerfectTables(const std::vector<PerfectRow>& rows,
                                const ExperimentConfig& cfg,
                                const std::filesystem::path& dir);
absl::Status WriteSweepTables(const std::vector<SweepRow>& rows,
                              const std::filesystem::path& dir);

}  // namespace privest

#endif  // PRIVEST_EXPERIMENTS_H_
