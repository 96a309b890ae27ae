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

#ifndef PRIVEST_CHANNEL_H_
#define PRIVEST_CHANNEL_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "privest/model.h"

namespace privest {

// Smallest probability kept in a channel row. Smaller entries are raised to
// this floor and the row renormalized so that logarithms stay finite.
inline constexpr double kChannelFloor = 1e-15;

// Discrete observation channel over K symbols (bins, or count vectors for a
// sensor array). Immutable once built.
struct Channel {
  JointPrior prior;
  Eigen::MatrixXd given_xy;  // (n*m) x K, row j*m + i is P(obs | x_j, y_i)
  Eigen::MatrixXd given_x;   // n x K
  Eigen::MatrixXd given_y;   // m x K
  Eigen::VectorXd marginal;  // K
  Eigen::VectorXd x_marginal;
  Eigen::VectorXd y_marginal;
  std::vector<std::string> symbol_labels;

  int n() const { return prior.n(); }
  int m() const { return prior.m(); }
  int symbols() const { return static_cast<int>(marginal.size()); }
  int Row(int j, int i) const { return j * m() + i; }
};

// Floors, renormalizes and marginalizes per-(x, y) observation rows. For a
// symbol x_j with zero prior mass, P(obs | x_j) weights the rows by the Y
// marginal (and symmetrically for y_i), which keeps every table stochastic.
absl::StatusOr<Channel> MakeChannel(const JointPrior& prior,
                                    Eigen::MatrixXd given_xy,
                                    std::vector<std::string> symbol_labels = {});

// Bin probabilities P(Z in B_l | x_j, y_i) as Gaussian CDF differences.
absl::StatusOr<Channel> BuildChannel(const SensorModel& model,
                                     const Partition& partition);

// Deviation matrix Phi(j, l) = P(obs = l | x_j) - P(obs = l). Rows of
// private symbols with zero prior mass are zero: independence places no
// constraint on them.
Eigen::MatrixXd PrivacyDeviation(const Channel& channel);

// Largest deviation from the row-sum and marginalization identities.
double ChannelConsistencyError(const Channel& channel);

}  // namespace privest

#endif  // PRIVEST_CHANNEL_H_
