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

#ifndef PRIVEST_MODEL_H_
#define PRIVEST_MODEL_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace privest {

// Joint distribution of the private variable X (rows) and the public
// variable Y (columns). Support values double as symbol labels and as the
// numeric inputs of the sensor mean.
struct JointPrior {
  std::vector<double> x_support;
  std::vector<double> y_support;
  Eigen::MatrixXd pmf;  // n x m, pmf(j, i) = P(X = x_j, Y = y_i)

  int n() const { return static_cast<int>(x_support.size()); }
  int m() const { return static_cast<int>(y_support.size()); }
  Eigen::VectorXd XMarginal() const { return pmf.rowwise().sum(); }
  Eigen::VectorXd YMarginal() const { return pmf.colwise().sum().transpose(); }

  std::vector<std::string> XLabels() const;
  std::vector<std::string> YLabels() const;
};

absl::Status ValidatePrior(const JointPrior& prior);

absl::StatusOr<JointPrior> MakeJointPrior(std::vector<double> x_support,
                                          std::vector<double> y_support,
                                          Eigen::MatrixXd pmf);

// Joint prior with independent X and Y.
absl::StatusOr<JointPrior> MakeProductPrior(std::vector<double> x_support,
                                            const Eigen::VectorXd& x_marginal,
                                            std::vector<double> y_support,
                                            const Eigen::VectorXd& y_marginal);

// Scalar Gaussian measurement Z = a*y + b*x + c + N(0, noise_std^2).
struct SensorModel {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double noise_std = 1.0;
  JointPrior prior;

  double Mean(int j, int i) const {
    return a * prior.y_support[i] + b * prior.x_support[j] + c;
  }
};

absl::Status ValidateSensorModel(const SensorModel& model);

// Cut points a_1 < ... < a_{N-1}. Bin 0 is (-inf, a_1], bin l is
// (a_l, a_{l+1}], the last bin is (a_{N-1}, inf).
struct Partition {
  std::vector<double> edges;

  int size() const { return static_cast<int>(edges.size()) + 1; }
  int BinOf(double z) const;
  // Bounds of bin l with infinities at the ends.
  double Lower(int l) const;
  double Upper(int l) const;
};

absl::StatusOr<Partition> MakePartition(std::vector<double> edges);

// Edges at the midpoints between consecutive distinct conditional means.
absl::StatusOr<Partition> MidpointPartition(const SensorModel& model);

// The four-hypothesis model Z = 0.6 Y + 0.4 X + N with sigma = 0.1,
// P(X = 0) = 0.7, P(Y = 0) = 0.5 and X independent of Y.
SensorModel ReferenceSensorModel();

// Midpoint partition of ReferenceSensorModel(): {0.2, 0.5, 0.8}.
Partition ReferencePartition();

}  // namespace privest

#endif  // PRIVEST_MODEL_H_
