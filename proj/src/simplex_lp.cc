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

#include "privest/simplex_lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "Eigen/LU"

namespace privest {

namespace {

// Tableau layout: rows 0..r-1 are constraints, row r is the cost row holding
// reduced costs; column `cols` holds the right-hand side (and -objective in
// the cost row).
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : rows_(static_cast<int>(a.rows())),
        vars_(static_cast<int>(a.cols())),
        t_(Eigen::MatrixXd::Zero(a.rows() + 1, a.cols() + a.rows() + 1)) {
    for (int r = 0; r < rows_; ++r) {
      const double sign = b(r) < 0.0 ? -1.0 : 1.0;
      t_.row(r).head(vars_) = sign * a.row(r);
      t_(r, vars_ + r) = 1.0;
      t_(r, rhs()) = sign * b(r);
      basis_.push_back(vars_ + r);
    }
    active_.assign(rows_, true);
  }

  int rhs() const { return vars_ + rows_; }
  bool IsArtificial(int col) const { return col >= vars_; }

  // Phase one cost: sum of artificials, priced out against the start basis.
  void SetPhaseOneCost() {
    t_.row(rows_).setZero();
    for (int r = 0; r < rows_; ++r) t_.row(rows_) -= t_.row(r);
    for (int r = 0; r < rows_; ++r) t_(rows_, vars_ + r) = 0.0;
  }

  void SetPhaseTwoCost(const Eigen::VectorXd& c) {
    t_.row(rows_).setZero();
    t_.row(rows_).head(vars_) = c.transpose();
    for (int r = 0; r < rows_; ++r) {
      if (!active_[r]) continue;
      const int col = basis_[r];
      const double cost = col < vars_ ? c(col) : 0.0;
      if (cost != 0.0) t_.row(rows_) -= cost * t_.row(r);
    }
  }

  void Pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int r = 0; r <= rows_; ++r) {
      if (r == row) continue;
      const double factor = t_(r, col);
      if (factor != 0.0) t_.row(r) -= factor * t_.row(row);
    }
    t_.col(col).setZero();
    t_(row, col) = 1.0;
    basis_[row] = col;
    for (int r = 0; r < rows_; ++r) {
      if (t_(r, rhs()) < 0.0) t_(r, rhs()) = 0.0;
    }
  }

  // Runs Bland's rule to optimality over the allowed columns.
  LpStatus Optimize(bool allow_artificial, const LpOptions& opt, int* pivots) {
    int degenerate_run = 0;
    while (*pivots < opt.max_pivots) {
      // Dantzig pricing, switching to Bland's rule during long degenerate
      // stretches so that the method cannot cycle.
      const bool bland = degenerate_run > 50;
      int enter = -1;
      double most_negative = -opt.cost_tol;
      const int limit = allow_artificial ? rhs() : vars_;
      for (int col = 0; col < limit; ++col) {
        if (t_(rows_, col) < most_negative) {
          enter = col;
          if (bland) break;
          most_negative = t_(rows_, col);
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      // Harris ratio test: bound the step with slightly relaxed right-hand
      // sides, then take the largest pivot among rows within that bound.
      double bound = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        if (!active_[r] || t_(r, enter) <= opt.pivot_tol) continue;
        bound = std::min(bound, (t_(r, rhs()) + opt.feasibility_tol) /
                                    t_(r, enter));
      }
      int leave = -1;
      double best_pivot = 0.0;
      for (int r = 0; r < rows_; ++r) {
        if (!active_[r] || t_(r, enter) <= opt.pivot_tol) continue;
        if (t_(r, rhs()) / t_(r, enter) <= bound &&
            t_(r, enter) > best_pivot) {
          best_pivot = t_(r, enter);
          leave = r;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      degenerate_run = t_(leave, rhs()) <= opt.feasibility_tol
                           ? degenerate_run + 1
                           : 0;
      Pivot(leave, enter);
      ++*pivots;
    }
    return LpStatus::kPivotLimit;
  }

  // Pivots zero-level artificials out of the basis; rows where that is
  // impossible are linearly dependent and get deactivated.
  void DriveOutArtificials(const LpOptions& opt, std::vector<int>* redundant,
                           int* pivots) {
    for (int r = 0; r < rows_; ++r) {
      if (!active_[r] || !IsArtificial(basis_[r])) continue;
      int col = -1;
      for (int k = 0; k < vars_; ++k) {
        if (std::abs(t_(r, k)) > opt.pivot_tol) {
          col = k;
          break;
        }
      }
      if (col >= 0) {
        Pivot(r, col);
        ++*pivots;
      } else {
        active_[r] = false;
        redundant->push_back(r);
      }
    }
  }

  double CostRhs() const { return t_(rows_, rhs()); }

  Eigen::VectorXd Solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(vars_);
    for (int r = 0; r < rows_; ++r) {
      if (active_[r] && basis_[r] < vars_) {
        x(basis_[r]) = std::max(0.0, t_(r, rhs()));
      }
    }
    return x;
  }

  Eigen::VectorXd ReducedCosts() const {
    return t_.row(rows_).head(vars_).transpose();
  }

  std::vector<std::pair<int, int>> ActiveRows() const {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < rows_; ++r) {
      if (active_[r]) out.emplace_back(r, basis_[r]);
    }
    return out;
  }

  std::vector<int> ActiveBasis() const {
    std::vector<int> out;
    for (int r = 0; r < rows_; ++r) {
      if (active_[r]) out.push_back(basis_[r]);
    }
    return out;
  }

 private:
  int rows_;
  int vars_;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  std::vector<bool> active_;
};

// Solves B x_B = b afresh with the original columns, discarding the
// round-off the tableau accumulated. Keeps the tableau values if the basis
// still holds an artificial or the refined point is not primal feasible.
void RefineBasicSolution(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                         const std::vector<std::pair<int, int>>& rows,
                         double feasibility_tol, Eigen::VectorXd* x) {
  const int k = static_cast<int>(rows.size());
  Eigen::MatrixXd basis(k, k);
  Eigen::VectorXd rhs(k);
  for (int r = 0; r < k; ++r) {
    if (rows[r].second >= a.cols()) return;
    rhs(r) = b(rows[r].first);
    for (int c = 0; c < k; ++c) basis(r, c) = a(rows[r].first, rows[c].second);
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
  const Eigen::VectorXd xb = lu.solve(rhs);
  if (!xb.allFinite() || xb.minCoeff() < -feasibility_tol) return;
  Eigen::VectorXd refined = Eigen::VectorXd::Zero(a.cols());
  for (int c = 0; c < k; ++c) refined(rows[c].second) = std::max(0.0, xb(c));
  if ((a * refined - b).cwiseAbs().maxCoeff() >
      (a * *x - b).cwiseAbs().maxCoeff()) {
    return;
  }
  *x = refined;
}

}  // namespace

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kPivotLimit:
      return "pivot_limit";
  }
  return "unknown";
}

LpResult SolveStandardFormLp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c,
                             const LpOptions& options) {
  LpResult result;
  // Equilibrate rows so the absolute pivot tolerance means the same thing for
  // every constraint. Row scaling leaves the feasible set unchanged.
  Eigen::MatrixXd scaled_a = a;
  Eigen::VectorXd scaled_b = b;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const double scale = a.row(r).cwiseAbs().maxCoeff();
    if (scale > 0.0) {
      scaled_a.row(r) /= scale;
      scaled_b(r) /= scale;
    }
  }
  Tableau tableau(scaled_a, scaled_b);

  tableau.SetPhaseOneCost();
  result.status = tableau.Optimize(true, options, &result.pivots);
  if (result.status != LpStatus::kOptimal) return result;
  // The cost row stores -objective in the right-hand-side column.
  if (-tableau.CostRhs() > options.phase_one_tol) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  tableau.DriveOutArtificials(options, &result.redundant_rows, &result.pivots);

  tableau.SetPhaseTwoCost(c);
  result.status = tableau.Optimize(false, options, &result.pivots);
  result.x = tableau.Solution();
  RefineBasicSolution(scaled_a, scaled_b, tableau.ActiveRows(),
                      options.feasibility_tol, &result.x);
  result.objective = c.dot(result.x);
  result.basis = tableau.ActiveBasis();
  result.reduced_costs = tableau.ReducedCosts();
  if (result.status == LpStatus::kOptimal) {
    std::vector<bool> basic(a.cols(), false);
    for (int col : result.basis) {
      if (col < a.cols()) basic[col] = true;
    }
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (!basic[k] && std::abs(result.reduced_costs(k)) <= options.cost_tol) {
        result.unique = false;
        break;
      }
    }
  }
  return result;
}

}  // namespace privest
