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

#ifndef PRIVEST_PRIVACY_SOLVER_H_
#define PRIVEST_PRIVACY_SOLVER_H_

#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privest/channel.h"
#include "privest/estimator.h"

namespace privest {

struct SolverConfig {
  double h0_bits = 0.0;  // required H(X | Yhat), bits
  double step_init = 1.0;
  double tol_kkt = 1e-6;
  double tol_primal = 1e-9;
  int max_iters = 50000;  // projected-gradient iterations per multiplier
  double mu_lo = 0.0;
  double mu_hi = 1.0;
};

absl::Status ValidateSolverConfig(const SolverConfig& cfg, int n);

struct SolverTraceRow {
  int iteration = 0;
  double objective = 0.0;
  double cond_entropy_bits = 0.0;
  double mu = 0.0;
  double residual = 0.0;
};

struct SolverState {
  Eigen::MatrixXd probs;
  double mu = 0.0;
  Eigen::VectorXd lambdas;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool certified = false;
  // Whether H(X | Yhat) >= H0 binds at the returned point.
  bool constraint_active = false;
  std::vector<SolverTraceRow> trace;
};

struct PrivacyAwareSolution {
  Estimator estimator;
  SolverState state;
  PrivacyReport report;
};

// True when h0 sits within 1e-9 bits of H(X), where only perfectly private
// estimators are feasible and SolvePerfectPrivacy should be used instead.
bool RequiresPerfectPrivacy(const Channel& ch, double h0_bits);

// Minimizes P(Y != Yhat) over column-stochastic estimators subject to
// H(X | Yhat) >= cfg.h0_bits. The multiplier of the privacy constraint is
// located by bisection; for each trial multiplier the Lagrangian is minimized
// by projected gradient with backtracking. The result carries a KKT
// certificate; state.certified is false when the residual exceeds tol_kkt.
//
// Errors: FailedPrecondition when h0 > H(X); InvalidArgument for a bad
// config or when RequiresPerfectPrivacy(ch, h0) holds.
absl::StatusOr<PrivacyAwareSolution> SolvePrivacyAware(const Channel& ch,
                                                       const SolverConfig& cfg);

// L(P, mu) = P(Y != Yhat) + mu * (h0 - H(X | Yhat)).
double LagrangianValue(const Eigen::MatrixXd& probs, double mu, double h0_bits,
                       const Channel& ch);

// dL/dP(h, k) = -P(obs = k | y_h) P(y_h)
//     + mu * sum_j P(x_j) P(obs = k | x_j) log2(P(Yhat = y_h | x_j) / P(Yhat = y_h)).
// The remaining terms of the derivative cancel because
// sum_j P(x_j) P(obs | x_j) = P(obs). Entries of probs are floored at 1e-12
// before the logarithm.
Eigen::MatrixXd LagrangianGradient(const Eigen::MatrixXd& probs, double mu,
                                   const Channel& ch);

// Equality multipliers that best balance the stationarity conditions of each
// column given the gradient (minimax over the column's entries).
Eigen::VectorXd EstimateMultipliers(const Eigen::MatrixXd& probs,
                                    const Eigen::MatrixXd& gradient,
                                    double boundary_tol);

// Max over: stationarity violation (entries in (0, 1) need gradient +
// lambda = 0, entries at 0 need it >= 0, entries at 1 need it <= 0), column
// sum violation, privacy violation max(0, h0 - H), and complementary
// slackness |mu (h0 - H)|. Entries within cfg.tol_primal of a bound count as
// on the bound.
double KktResidual(const Eigen::MatrixXd& probs, double mu,
                   const Eigen::VectorXd& lambdas, const Channel& ch,
                   const SolverConfig& cfg);

}  // namespace privest

#endif  // PRIVEST_PRIVACY_SOLVER_H_
