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

#ifndef PRIVEST_MONTE_CARLO_H_
#define PRIVEST_MONTE_CARLO_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "privest/channel.h"
#include "privest/estimator.h"
#include "privest/model.h"
#include "privest/multi_sensor.h"
#include "privest/rng.h"

namespace privest {

// One simulated draw of the hidden pair and what the estimator sees.
struct Draw {
  int x = 0;
  int y = 0;
  int symbol = 0;                // observation symbol (bin or count index)
  std::vector<int> sensor_bins;  // per-sensor bins; empty for channel draws
};

struct ObservationSampler {
  int n = 0;
  int m = 0;
  int symbols = 0;
  int bins = 0;  // sensor bins per draw; 0 for channel-level sampling
  std::function<void(SplitMix64&, Draw&)> draw;
};

// Draws (x, y) from the prior and the symbol from the channel row.
ObservationSampler DiscreteChannelSampler(const Channel& ch);

// Simulates `sensors` Gaussian measurements sharing (x, y), bins each, and
// reports the count vector's index in `alphabet` (or the bin itself for a
// single sensor with no alphabet).
absl::StatusOr<ObservationSampler> SensorArraySampler(
    const SensorModel& model, const Partition& partition, int sensors,
    std::shared_ptr<const CountAlphabet> alphabet);

struct TrialRecord {
  int x = 0;
  int y = 0;
  std::vector<int> sensor_bins;
  std::vector<int> counts;  // per-bin counts; empty without sensor bins
  int symbol = 0;
  std::vector<int> outputs;  // per policy
  std::vector<bool> correct;  // per policy
};

struct EmpiricalReport {
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  double error_prob = 0.0;
  Eigen::MatrixXd joint_counts;    // n x m tallies of (X = x_j, Yhat = y_i)
  Eigen::MatrixXd x_given_output;  // n x m, NaN for outputs never seen
  Eigen::VectorXd output_freq;     // m
  double cond_entropy_bits = 0.0;  // plug-in estimates
  double mutual_info_bits = 0.0;
};

struct MonteCarloOptions {
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  std::int64_t keep_records = 0;
  std::int64_t shard_size = 8192;
};

struct MonteCarloResult {
  std::vector<EmpiricalReport> policies;
  std::vector<TrialRecord> records;
};

// Runs every policy on the same simulated observations. Trials are split into
// shards with their own substreams and merged in shard order, so the result
// depends only on the seed and the trial count.
absl::StatusOr<MonteCarloResult> MonteCarloEval(
    std::span<const Estimator> policies, const ObservationSampler& sampler,
    const MonteCarloOptions& options);

absl::StatusOr<EmpiricalReport> MonteCarloEval(
    const Estimator& est, const ObservationSampler& sampler,
    const MonteCarloOptions& options);

// Binomial standard error sqrt(p (1 - p) / trials).
double BinomialSigma(double p, std::int64_t trials);

// |empirical - analytic| <= k * BinomialSigma(analytic, trials), with a
// 1e-12 floor for degenerate probabilities.
bool WithinSigmas(double analytic, double empirical, std::int64_t trials,
                  double k = 3.0);

}  // namespace privest

#endif  // PRIVEST_MONTE_CARLO_H_
