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

#include "privest/estimator.h"

#include <cmath>

#include "absl/strings/str_format.h"

namespace privest {

absl::Status ValidateEstimator(const Estimator& est, double tol) {
  if (est.outputs() < 1 || est.symbols() < 1) {
    return absl::InvalidArgumentError("estimator matrix is empty");
  }
  if (!est.output_labels.empty() &&
      static_cast<int>(est.output_labels.size()) != est.outputs()) {
    return absl::InvalidArgumentError("output label count mismatch");
  }
  if (!est.probs.allFinite()) {
    return absl::InvalidArgumentError("estimator has non-finite entries");
  }
  if (est.probs.minCoeff() < -tol || est.probs.maxCoeff() > 1.0 + tol) {
    return absl::InvalidArgumentError("estimator entries must lie in [0, 1]");
  }
  for (int l = 0; l < est.symbols(); ++l) {
    const double s = est.probs.col(l).sum();
    if (std::abs(s - 1.0) > tol) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "estimator column %d sums to %.17g, expected 1", l, s));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckCompatible(const Estimator& est, const Channel& ch) {
  if (est.outputs() != ch.m() || est.symbols() != ch.symbols()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "estimator is %dx%d but the channel needs %dx%d", est.outputs(),
        est.symbols(), ch.m(), ch.symbols()));
  }
  return ValidateEstimator(est);
}

Estimator ConstantEstimator(const Channel& ch, const Eigen::VectorXd& weights) {
  Estimator est;
  est.probs = weights.replicate(1, ch.symbols());
  est.output_labels = ch.prior.YLabels();
  return est;
}

Estimator UniformEstimator(const Channel& ch) {
  return ConstantEstimator(ch, Eigen::VectorXd::Constant(ch.m(), 1.0 / ch.m()));
}

Estimator DeterministicEstimator(const Channel& ch, int index) {
  return ConstantEstimator(ch, Eigen::VectorXd::Unit(ch.m(), index));
}

Estimator MapEstimator(const Channel& ch) {
  const Eigen::MatrixXd w = CorrectDecisionWeights(ch);
  Estimator est;
  est.probs = Eigen::MatrixXd::Zero(ch.m(), ch.symbols());
  est.output_labels = ch.prior.YLabels();
  for (int l = 0; l < ch.symbols(); ++l) {
    Eigen::Index best;
    w.col(l).maxCoeff(&best);  // first maximum
    est.probs(best, l) = 1.0;
  }
  return est;
}

absl::StatusOr<double> ErrorProbability(const Estimator& est,
                                        const Channel& ch) {
  if (auto s = CheckCompatible(est, ch); !s.ok()) return s;
  return ErrorProbability(est.probs, ch);
}

absl::StatusOr<Eigen::VectorXd> OutputPmf(const Estimator& est,
                                          const Channel& ch) {
  if (auto s = CheckCompatible(est, ch); !s.ok()) return s;
  return OutputPmf(est.probs, ch);
}

absl::StatusOr<Eigen::VectorXd> ConditionalOutputPmf(const Estimator& est,
                                                     const Channel& ch, int j) {
  if (auto s = CheckCompatible(est, ch); !s.ok()) return s;
  if (j < 0 || j >= ch.n()) {
    return absl::OutOfRangeError(absl::StrFormat("private index %d", j));
  }
  return Eigen::VectorXd(est.probs * ch.given_x.row(j).transpose());
}

absl::StatusOr<double> ConditionalEntropy(const Estimator& est,
                                          const Channel& ch) {
  if (auto s = CheckCompatible(est, ch); !s.ok()) return s;
  return ConditionalEntropy(est.probs, ch);
}

absl::StatusOr<double> MutualInformation(const Estimator& est,
                                         const Channel& ch) {
  if (auto s = CheckCompatible(est, ch); !s.ok()) return s;
  return MutualInformation(est.probs, ch);
}

absl::StatusOr<double> FanoLowerBound(double cond_entropy_bits, int n) {
  if (n < 2) {
    return absl::InvalidArgumentError("Fano bound needs at least 2 symbols");
  }
  return std::max(0.0, (cond_entropy_bits - 1.0) / std::log2(n));
}

absl::StatusOr<PrivacyReport> Evaluate(const Estimator& est,
                                       const Channel& ch) {
  if (auto s = CheckCompatible(est, ch); !s.ok()) return s;
  PrivacyReport report;
  report.prior_entropy_bits = EntropyBits(ch.x_marginal);
  report.mutual_info_bits = MutualInformation(est.probs, ch);
  report.cond_entropy_bits =
      report.prior_entropy_bits - report.mutual_info_bits;
  report.fano_bound =
      ch.n() >= 2 ? *FanoLowerBound(report.cond_entropy_bits, ch.n()) : 0.0;
  report.error_prob = ErrorProbability(est.probs, ch);
  const Eigen::MatrixXd phi = PrivacyDeviation(ch);
  report.pp_residual = (phi * est.probs.transpose()).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace privest
