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

#ifndef PRIVEST_SIMPLEX_LP_H_
#define PRIVEST_SIMPLEX_LP_H_

#include <vector>

#include "Eigen/Core"

namespace privest {

struct LpOptions {
  double pivot_tol = 1e-11;
  double cost_tol = 1e-11;
  double feasibility_tol = 1e-9;
  // Phase one declares infeasibility when the artificial sum of the
  // row-equilibrated problem stays above this.
  double phase_one_tol = 1e-7;
  int max_pivots = 200000;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kPivotLimit };

const char* LpStatusName(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  // Basic variable per surviving constraint row (indices into x).
  std::vector<int> basis;
  // Phase-two reduced costs c_j - c_B B^{-1} A_j; all >= -cost_tol at an
  // optimum, zero on basic variables.
  Eigen::VectorXd reduced_costs;
  // Equality rows found linearly dependent during phase one.
  std::vector<int> redundant_rows;
  int pivots = 0;
  // False when some nonbasic variable has zero reduced cost, i.e. another
  // optimal vertex may exist.
  bool unique = true;
};

// Minimizes c'x subject to A x = b, x >= 0 with a dense two-phase primal
// simplex on the row-equilibrated problem. Pricing is Dantzig's rule, with
// Bland's rule during long degenerate runs; the leaving row comes from a
// Harris ratio test. The final basic solution is recomputed from an LU
// factorization of the original basis columns. Deterministic for fixed input.
LpResult SolveStandardFormLp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c,
                             const LpOptions& options = {});

}  // namespace privest

#endif  // PRIVEST_SIMPLEX_LP_H_
