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

#include "privest/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace privest {

namespace {

constexpr double kPmfTolerance = 1e-12;

std::vector<std::string> Labels(const std::vector<double>& values) {
  std::vector<std::string> labels;
  labels.reserve(values.size());
  for (double v : values) labels.push_back(absl::StrCat(v));
  return labels;
}

absl::Status CheckDistinct(const std::vector<double>& support,
                           const char* name) {
  std::vector<double> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " support has repeated values"));
  }
  for (double v : support) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat(name, " support must be finite"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<std::string> JointPrior::XLabels() const {
  return Labels(x_support);
}
std::vector<std::string> JointPrior::YLabels() const {
  return Labels(y_support);
}

absl::Status ValidatePrior(const JointPrior& prior) {
  if (prior.n() < 1 || prior.m() < 1) {
    return absl::InvalidArgumentError("prior needs n >= 1 and m >= 1");
  }
  if (prior.pmf.rows() != prior.n() || prior.pmf.cols() != prior.m()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "prior pmf is %dx%d, expected %dx%d", prior.pmf.rows(),
        prior.pmf.cols(), prior.n(), prior.m()));
  }
  if (auto s = CheckDistinct(prior.x_support, "x"); !s.ok()) return s;
  if (auto s = CheckDistinct(prior.y_support, "y"); !s.ok()) return s;
  if (!prior.pmf.allFinite() || prior.pmf.minCoeff() < 0.0) {
    return absl::InvalidArgumentError("prior pmf entries must be >= 0");
  }
  if (std::abs(prior.pmf.sum() - 1.0) > kPmfTolerance) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "prior pmf sums to %.17g, expected 1", prior.pmf.sum()));
  }
  return absl::OkStatus();
}

absl::StatusOr<JointPrior> MakeJointPrior(std::vector<double> x_support,
                                          std::vector<double> y_support,
                                          Eigen::MatrixXd pmf) {
  JointPrior prior{std::move(x_support), std::move(y_support), std::move(pmf)};
  if (auto s = ValidatePrior(prior); !s.ok()) return s;
  return prior;
}

absl::StatusOr<JointPrior> MakeProductPrior(std::vector<double> x_support,
                                            const Eigen::VectorXd& x_marginal,
                                            std::vector<double> y_support,
                                            const Eigen::VectorXd& y_marginal) {
  if (x_marginal.size() != static_cast<Eigen::Index>(x_support.size()) ||
      y_marginal.size() != static_cast<Eigen::Index>(y_support.size())) {
    return absl::InvalidArgumentError("marginal size does not match support");
  }
  return MakeJointPrior(std::move(x_support), std::move(y_support),
                        x_marginal * y_marginal.transpose());
}

absl::Status ValidateSensorModel(const SensorModel& model) {
  if (!(model.noise_std > 0.0) || !std::isfinite(model.noise_std)) {
    return absl::InvalidArgumentError("noise_std must be positive");
  }
  if (!std::isfinite(model.a) || !std::isfinite(model.b) ||
      !std::isfinite(model.c)) {
    return absl::InvalidArgumentError("mean coefficients must be finite");
  }
  return ValidatePrior(model.prior);
}

int Partition::BinOf(double z) const {
  // Bins are closed on the right, so z == a_l falls in bin l - 1.
  return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), z) -
                          edges.begin());
}

double Partition::Lower(int l) const {
  return l == 0 ? -std::numeric_limits<double>::infinity() : edges[l - 1];
}

double Partition::Upper(int l) const {
  return l == size() - 1 ? std::numeric_limits<double>::infinity() : edges[l];
}

absl::StatusOr<Partition> MakePartition(std::vector<double> edges) {
  if (edges.empty()) {
    return absl::InvalidArgumentError("partition needs at least one edge");
  }
  for (size_t k = 0; k < edges.size(); ++k) {
    if (!std::isfinite(edges[k])) {
      return absl::InvalidArgumentError("partition edges must be finite");
    }
    if (k > 0 && !(edges[k] > edges[k - 1])) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "partition edges must be strictly increasing (edge %d)", k));
    }
  }
  return Partition{std::move(edges)};
}

absl::StatusOr<Partition> MidpointPartition(const SensorModel& model) {
  std::vector<double> means;
  for (int j = 0; j < model.prior.n(); ++j) {
    for (int i = 0; i < model.prior.m(); ++i) means.push_back(model.Mean(j, i));
  }
  std::sort(means.begin(), means.end());
  means.erase(std::unique(means.begin(), means.end()), means.end());
  if (means.size() < 2) {
    return absl::InvalidArgumentError(
        "all conditional means coincide; supply partition edges explicitly");
  }
  std::vector<double> edges;
  for (size_t k = 1; k < means.size(); ++k) {
    edges.push_back(0.5 * (means[k - 1] + means[k]));
  }
  return MakePartition(std::move(edges));
}

SensorModel ReferenceSensorModel() {
  Eigen::Vector2d px(0.7, 0.3);
  Eigen::Vector2d py(0.5, 0.5);
  SensorModel model;
  model.a = 0.6;
  model.b = 0.4;
  model.c = 0.0;
  model.noise_std = 0.1;
  model.prior = *MakeProductPrior({0.0, 1.0}, px, {0.0, 1.0}, py);
  return model;
}

Partition ReferencePartition() { return Partition{{0.2, 0.5, 0.8}}; }

}  // namespace privest
