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

#ifndef PRIVEST_ESTIMATOR_H_
#define PRIVEST_ESTIMATOR_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privest/channel.h"
#include "privest/information.h"

namespace privest {

// Randomized estimator: probs(i, l) is the probability of declaring y_i when
// the observation symbol is l. Columns are probability vectors.
struct Estimator {
  Eigen::MatrixXd probs;  // m x K
  std::vector<std::string> output_labels;

  int outputs() const { return static_cast<int>(probs.rows()); }
  int symbols() const { return static_cast<int>(probs.cols()); }
};

absl::Status ValidateEstimator(const Estimator& est, double tol = 1e-10);

// Checks that est can be evaluated against ch.
absl::Status CheckCompatible(const Estimator& est, const Channel& ch);

Estimator UniformEstimator(const Channel& ch);
// Every column declares y_i with probability weights(i).
Estimator ConstantEstimator(const Channel& ch, const Eigen::VectorXd& weights);
// Always declares output `index`.
Estimator DeterministicEstimator(const Channel& ch, int index);
// Column-wise MAP of Y; the lowest output index wins ties.
Estimator MapEstimator(const Channel& ch);

// W(i, l) = P(obs = l | Y = y_i) P(Y = y_i): the probability of a correct
// declaration is sum(probs .* W).
inline Eigen::MatrixXd CorrectDecisionWeights(const Channel& ch) {
  return ch.y_marginal.asDiagonal() * ch.given_y;
}

// ---------------------------------------------------------------------------
// Matrix kernels. These assume probs is m x K for the given channel and work
// for any floating scalar, so tests can evaluate them in extended precision.

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> OutputPmf(
    const Eigen::MatrixBase<Derived>& probs, const Channel& ch) {
  using Scalar = typename Derived::Scalar;
  return probs * ch.marginal.cast<Scalar>();
}

// m x n matrix whose column j is P(Yhat | X = x_j).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
ConditionalOutputPmfs(const Eigen::MatrixBase<Derived>& probs,
                      const Channel& ch) {
  using Scalar = typename Derived::Scalar;
  return probs * ch.given_x.transpose().cast<Scalar>();
}

template <typename Derived>
typename Derived::Scalar ErrorProbability(
    const Eigen::MatrixBase<Derived>& probs, const Channel& ch) {
  using Scalar = typename Derived::Scalar;
  const Eigen::MatrixXd w = CorrectDecisionWeights(ch);
  return Scalar(1) - probs.cwiseProduct(w.cast<Scalar>()).sum();
}

// I(X; Yhat) = sum_j P(x_j) D(P(Yhat | x_j) || P(Yhat)), in bits.
template <typename Derived>
typename Derived::Scalar MutualInformation(
    const Eigen::MatrixBase<Derived>& probs, const Channel& ch) {
  using Scalar = typename Derived::Scalar;
  const auto q = OutputPmf(probs, ch);
  const auto qx = ConditionalOutputPmfs(probs, ch);
  Scalar mi(0);
  for (int j = 0; j < ch.n(); ++j) {
    if (ch.x_marginal(j) <= 0.0) continue;
    mi += Scalar(ch.x_marginal(j)) * KlDivergenceBits(qx.col(j), q);
  }
  return mi;
}

// H(X | Yhat) through the divergence decomposition H(X) - I(X; Yhat).
template <typename Derived>
typename Derived::Scalar ConditionalEntropy(
    const Eigen::MatrixBase<Derived>& probs, const Channel& ch) {
  using Scalar = typename Derived::Scalar;
  return EntropyBits(ch.x_marginal.cast<Scalar>()) -
         MutualInformation(probs, ch);
}

// H(X | Yhat) from its definition as a double sum over outputs and private
// symbols. Kept as an independent cross-check of ConditionalEntropy.
template <typename Derived>
typename Derived::Scalar ConditionalEntropyDirect(
    const Eigen::MatrixBase<Derived>& probs, const Channel& ch) {
  using Scalar = typename Derived::Scalar;
  using std::log2;
  const auto qx = ConditionalOutputPmfs(probs, ch);
  Scalar h(0);
  for (Eigen::Index i = 0; i < qx.rows(); ++i) {
    Scalar p_out(0);
    for (int j = 0; j < ch.n(); ++j) p_out += Scalar(ch.x_marginal(j)) * qx(i, j);
    if (p_out <= Scalar(kNegligibleMass)) continue;
    for (int j = 0; j < ch.n(); ++j) {
      const Scalar joint = Scalar(ch.x_marginal(j)) * qx(i, j);
      if (joint <= Scalar(kNegligibleMass)) continue;
      h -= joint * log2(joint / p_out);
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Checked estimator-level API.

absl::StatusOr<double> ErrorProbability(const Estimator& est,
                                        const Channel& ch);
absl::StatusOr<Eigen::VectorXd> OutputPmf(const Estimator& est,
                                          const Channel& ch);
absl::StatusOr<Eigen::VectorXd> ConditionalOutputPmf(const Estimator& est,
                                                     const Channel& ch, int j);
absl::StatusOr<double> ConditionalEntropy(const Estimator& est,
                                          const Channel& ch);
absl::StatusOr<double> MutualInformation(const Estimator& est,
                                         const Channel& ch);

// Fano lower bound max(0, (H(X|Yhat) - 1) / log2 n) on the error of any
// estimator of X from Yhat. Informative only when n > 2.
absl::StatusOr<double> FanoLowerBound(double cond_entropy_bits, int n);

struct PrivacyReport {
  double prior_entropy_bits = 0.0;
  double cond_entropy_bits = 0.0;
  double mutual_info_bits = 0.0;
  double fano_bound = 0.0;
  double error_prob = 0.0;
  // max_i ||Phi P_i||_inf; zero iff the output is independent of X.
  double pp_residual = 0.0;
};

absl::StatusOr<PrivacyReport> Evaluate(const Estimator& est,
                                       const Channel& ch);

}  // namespace privest

#endif  // PRIVEST_ESTIMATOR_H_
