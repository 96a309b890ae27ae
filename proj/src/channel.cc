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

#include "privest/channel.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "privest/gaussian.h"

namespace privest {

namespace {

// Conditional weights P(Y = y_i | X = x_j) as an n x m matrix.
Eigen::MatrixXd YGivenX(const JointPrior& prior) {
  Eigen::MatrixXd w(prior.n(), prior.m());
  const Eigen::VectorXd px = prior.XMarginal();
  const Eigen::VectorXd py = prior.YMarginal();
  for (int j = 0; j < prior.n(); ++j) {
    if (px(j) > 0.0) {
      w.row(j) = prior.pmf.row(j) / px(j);
    } else {
      w.row(j) = py.transpose();
    }
  }
  return w;
}

// Conditional weights P(X = x_j | Y = y_i) as an n x m matrix.
Eigen::MatrixXd XGivenY(const JointPrior& prior) {
  Eigen::MatrixXd w(prior.n(), prior.m());
  const Eigen::VectorXd px = prior.XMarginal();
  const Eigen::VectorXd py = prior.YMarginal();
  for (int i = 0; i < prior.m(); ++i) {
    if (py(i) > 0.0) {
      w.col(i) = prior.pmf.col(i) / py(i);
    } else {
      w.col(i) = px;
    }
  }
  return w;
}

std::string BinLabel(const Partition& partition, int l) {
  auto bound = [](double v) {
    return std::isinf(v) ? std::string(v < 0 ? "-inf" : "inf")
                         : absl::StrCat(v);
  };
  return absl::StrCat("(", bound(partition.Lower(l)), " ",
                      bound(partition.Upper(l)), "]");
}

}  // namespace

absl::StatusOr<Channel> MakeChannel(const JointPrior& prior,
                                    Eigen::MatrixXd given_xy,
                                    std::vector<std::string> symbol_labels) {
  if (auto s = ValidatePrior(prior); !s.ok()) return s;
  const int n = prior.n();
  const int m = prior.m();
  if (given_xy.rows() != n * m || given_xy.cols() < 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "channel has %d rows, expected n*m = %d", given_xy.rows(), n * m));
  }
  if (!given_xy.allFinite() || given_xy.minCoeff() < 0.0) {
    return absl::InvalidArgumentError("channel entries must be >= 0");
  }
  const int k = static_cast<int>(given_xy.cols());
  if (symbol_labels.empty()) {
    for (int l = 0; l < k; ++l) symbol_labels.push_back(absl::StrCat(l + 1));
  } else if (static_cast<int>(symbol_labels.size()) != k) {
    return absl::InvalidArgumentError("symbol label count mismatch");
  }

  given_xy = given_xy.cwiseMax(kChannelFloor);
  for (Eigen::Index r = 0; r < given_xy.rows(); ++r) {
    given_xy.row(r) /= given_xy.row(r).sum();
  }

  Channel ch;
  ch.prior = prior;
  ch.x_marginal = prior.XMarginal();
  ch.y_marginal = prior.YMarginal();
  ch.symbol_labels = std::move(symbol_labels);

  const Eigen::MatrixXd y_given_x = YGivenX(prior);
  const Eigen::MatrixXd x_given_y = XGivenY(prior);
  ch.given_x = Eigen::MatrixXd::Zero(n, k);
  ch.given_y = Eigen::MatrixXd::Zero(m, k);
  ch.marginal = Eigen::VectorXd::Zero(k);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const auto row = given_xy.row(j * m + i);
      ch.given_x.row(j) += y_given_x(j, i) * row;
      ch.given_y.row(i) += x_given_y(j, i) * row;
      ch.marginal += prior.pmf(j, i) * row.transpose();
    }
  }
  ch.given_xy = std::move(given_xy);
  return ch;
}

absl::StatusOr<Channel> BuildChannel(const SensorModel& model,
                                     const Partition& partition) {
  if (auto s = ValidateSensorModel(model); !s.ok()) return s;
  if (auto p = MakePartition(partition.edges); !p.ok()) return p.status();
  const int n = model.prior.n();
  const int m = model.prior.m();
  const int k = partition.size();
  Eigen::MatrixXd given_xy(n * m, k);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const double mean = model.Mean(j, i);
      for (int l = 0; l < k; ++l) {
        given_xy(j * m + i, l) = GaussianIntervalProbability(
            (partition.Lower(l) - mean) / model.noise_std,
            (partition.Upper(l) - mean) / model.noise_std);
      }
    }
  }
  std::vector<std::string> labels;
  for (int l = 0; l < k; ++l) labels.push_back(BinLabel(partition, l));
  return MakeChannel(model.prior, std::move(given_xy), std::move(labels));
}

Eigen::MatrixXd PrivacyDeviation(const Channel& ch) {
  Eigen::MatrixXd phi = ch.given_x.rowwise() - ch.marginal.transpose();
  for (int j = 0; j < ch.n(); ++j) {
    if (ch.x_marginal(j) <= 0.0) phi.row(j).setZero();
  }
  return phi;
}

double ChannelConsistencyError(const Channel& ch) {
  double err = 0.0;
  auto row_sums = [&err](const Eigen::MatrixXd& t) {
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      err = std::max(err, std::abs(t.row(r).sum() - 1.0));
    }
  };
  row_sums(ch.given_xy);
  row_sums(ch.given_x);
  row_sums(ch.given_y);
  err = std::max(err, std::abs(ch.marginal.sum() - 1.0));
  Eigen::VectorXd from_x = ch.given_x.transpose() * ch.x_marginal;
  Eigen::VectorXd from_y = ch.given_y.transpose() * ch.y_marginal;
  err = std::max(err, (from_x - ch.marginal).cwiseAbs().maxCoeff());
  err = std::max(err, (from_y - ch.marginal).cwiseAbs().maxCoeff());
  return err;
}

}  // namespace privest
