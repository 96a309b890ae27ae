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

#ifndef PRIVEST_PERFECT_PRIVACY_H_
#define PRIVEST_PERFECT_PRIVACY_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "privest/channel.h"
#include "privest/estimator.h"
#include "privest/model.h"
#include "privest/simplex_lp.h"

namespace privest {

// phi(j, l) = P(obs = l | x_j) - P(obs = l). Every row sums to zero.
struct PhiMatrix {
  Eigen::MatrixXd data;  // n x K
  double tol_rank = 1e-10;
};

PhiMatrix BuildPhi(const Channel& ch);

// Orthonormal basis (as columns, K x d) of the null space of phi. The pivot
// structure comes from Gauss-Jordan elimination with partial pivoting;
// columns whose pivot falls below tol_rank are treated as free.
Eigen::MatrixXd NullSpaceBasis(const PhiMatrix& phi);

struct PrivacyCheck {
  bool is_private = false;
  double residual = 0.0;  // max_i ||phi P_i||_inf
};

// An estimator's output is independent of X iff every row P_i of its matrix
// lies in the null space of phi.
absl::StatusOr<PrivacyCheck> IsPerfectlyPrivate(const Estimator& est,
                                                const PhiMatrix& phi,
                                                double tol);

struct LpCertificate {
  std::vector<int> basis;         // variable index = l * m + i
  Eigen::VectorXd reduced_costs;  // per variable, same indexing
  std::vector<int> redundant_rows;
  int pivots = 0;
  double objective = 0.0;  // maximal probability of a correct declaration
  bool unique = true;
};

struct PerfectPrivacySolution {
  Estimator estimator;
  PrivacyReport report;
  LpCertificate certificate;
};

// Maximizes P(Y = Yhat) subject to column-stochasticity and phi P_i = 0 for
// every output i. Upper bounds P <= 1 follow from the column sums. Errors:
// FailedPrecondition if the program is infeasible (only possible with K <= n),
// Internal if the residual of the returned vertex exceeds residual_tol.
absl::StatusOr<PerfectPrivacySolution> SolvePerfectPrivacy(
    const Channel& ch, double residual_tol = 1e-9);

// A discrete estimator on a partition is also an estimator on the real line,
// constant on each bin. Its continuous independence constraints
// integral P_i(z) (p_Z(z) - p_Z|X(z | x_j)) dz = 0 reduce to phi P_i = 0 on
// the partition's channel, so the discrete program is a restriction of the
// continuous one.
struct DiscreteReduction {
  Channel channel;
  bool feasibility_guaranteed = false;  // K > n
  std::string note;
};

absl::StatusOr<DiscreteReduction> ReduceContinuousToDiscrete(
    const SensorModel& model, const Partition& partition);

// m x n matrix of integral P_i(z) (p_Z(z) - p_Z|X(z | x_j)) dz for the
// piecewise-constant extension of est, evaluated by composite Simpson
// quadrature of the Gaussian densities (independently of the CDF path used to
// build channels).
absl::StatusOr<Eigen::MatrixXd> PiecewisePrivacyIntegrals(
    const Estimator& est, const SensorModel& model, const Partition& partition);

}  // namespace privest

#endif  // PRIVEST_PERFECT_PRIVACY_H_
