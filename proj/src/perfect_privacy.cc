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

#include "privest/perfect_privacy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "Eigen/QR"
#include "absl/strings/str_format.h"
#include "privest/gaussian.h"

namespace privest {

PhiMatrix BuildPhi(const Channel& ch) { return {PrivacyDeviation(ch)}; }

Eigen::MatrixXd NullSpaceBasis(const PhiMatrix& phi) {
  Eigen::MatrixXd r = phi.data;
  const Eigen::Index rows = r.rows();
  const Eigen::Index cols = r.cols();
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index lead = 0;
  for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
    Eigen::Index best;
    const double magnitude =
        r.col(col).segment(lead, rows - lead).cwiseAbs().maxCoeff(&best);
    if (magnitude <= phi.tol_rank) continue;
    best += lead;
    r.row(lead).swap(r.row(best));
    r.row(lead) /= r(lead, col);
    for (Eigen::Index other = 0; other < rows; ++other) {
      if (other != lead) r.row(other) -= r(other, col) * r.row(lead);
    }
    pivot_cols.push_back(col);
    ++lead;
  }

  std::vector<bool> is_pivot(cols, false);
  for (Eigen::Index c : pivot_cols) is_pivot[c] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(free_cols.size());
  if (dim == 0) return Eigen::MatrixXd(cols, 0);

  // One vector per free column: set it to 1 and solve for the pivots.
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(cols, dim);
  for (Eigen::Index f = 0; f < dim; ++f) {
    raw(free_cols[f], f) = 1.0;
    for (size_t p = 0; p < pivot_cols.size(); ++p) {
      raw(pivot_cols[p], f) = -r(static_cast<Eigen::Index>(p), free_cols[f]);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  return qr.householderQ() * Eigen::MatrixXd::Identity(cols, dim);
}

absl::StatusOr<PrivacyCheck> IsPerfectlyPrivate(const Estimator& est,
                                                const PhiMatrix& phi,
                                                double tol) {
  if (est.symbols() != phi.data.cols()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "estimator has %d symbols, phi has %d columns", est.symbols(),
        phi.data.cols()));
  }
  PrivacyCheck check;
  check.residual = (phi.data * est.probs.transpose()).cwiseAbs().maxCoeff();
  check.is_private = check.residual <= tol;
  return check;
}

absl::StatusOr<PerfectPrivacySolution> SolvePerfectPrivacy(
    const Channel& ch, double residual_tol) {
  const PhiMatrix phi = BuildPhi(ch);
  const int m = ch.m();
  const int k = ch.symbols();
  const int vars = m * k;

  // Rows of phi that vanish impose nothing.
  std::vector<int> phi_rows;
  for (int j = 0; j < ch.n(); ++j) {
    if (phi.data.row(j).cwiseAbs().maxCoeff() > phi.tol_rank) {
      phi_rows.push_back(j);
    }
  }
  const int constraints = k + m * static_cast<int>(phi_rows.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(constraints, vars);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(constraints);
  for (int l = 0; l < k; ++l) {
    a.row(l).segment(l * m, m).setOnes();
    b(l) = 1.0;
  }
  int row = k;
  for (int i = 0; i < m; ++i) {
    for (int j : phi_rows) {
      for (int l = 0; l < k; ++l) a(row, l * m + i) = phi.data(j, l);
      ++row;
    }
  }
  const Eigen::MatrixXd weights = CorrectDecisionWeights(ch);
  const Eigen::VectorXd cost =
      -Eigen::Map<const Eigen::VectorXd>(weights.data(), vars);

  const LpResult lp = SolveStandardFormLp(a, b, cost);
  if (lp.status == LpStatus::kInfeasible) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "perfect-privacy program is infeasible with %d symbols and %d private "
        "values; refine the partition so that the symbol count exceeds %d",
        k, ch.n(), ch.n()));
  }
  if (lp.status != LpStatus::kOptimal) {
    return absl::InternalError(
        absl::StrFormat("simplex stopped: %s", LpStatusName(lp.status)));
  }

  PerfectPrivacySolution solution;
  Eigen::MatrixXd probs = Eigen::Map<const Eigen::MatrixXd>(lp.x.data(), m, k);
  for (int l = 0; l < k; ++l) probs.col(l) /= probs.col(l).sum();
  solution.estimator.probs = std::move(probs);
  solution.estimator.output_labels = ch.prior.YLabels();
  solution.certificate = {lp.basis, lp.reduced_costs, lp.redundant_rows,
                          lp.pivots, -lp.objective, lp.unique};

  auto check = IsPerfectlyPrivate(solution.estimator, phi, residual_tol);
  if (!check.ok()) return check.status();
  if (!check->is_private) {
    return absl::InternalError(absl::StrFormat(
        "simplex vertex violates independence by %.3g", check->residual));
  }
  auto report = Evaluate(solution.estimator, ch);
  if (!report.ok()) return report.status();
  solution.report = *report;
  return solution;
}

absl::StatusOr<DiscreteReduction> ReduceContinuousToDiscrete(
    const SensorModel& model, const Partition& partition) {
  auto channel = BuildChannel(model, partition);
  if (!channel.ok()) return channel.status();
  DiscreteReduction out;
  out.channel = *std::move(channel);
  const int k = partition.size();
  const int n = model.prior.n();
  out.feasibility_guaranteed = k > n;
  if (out.feasibility_guaranteed) {
    out.note = absl::StrFormat(
        "%d bins > %d private values: constant estimators are feasible, and "
        "every discrete solution is a bin-wise constant solution on the real "
        "line",
        k, n);
  } else {
    out.note = absl::StrFormat(
        "warning: %d bins <= %d private values; a perfectly private estimator "
        "is not guaranteed beyond constants, refine the partition",
        k, n);
  }
  return out;
}

absl::StatusOr<Eigen::MatrixXd> PiecewisePrivacyIntegrals(
    const Estimator& est, const SensorModel& model,
    const Partition& partition) {
  if (auto s = ValidateSensorModel(model); !s.ok()) return s;
  if (est.symbols() != partition.size() || est.outputs() != model.prior.m()) {
    return absl::InvalidArgumentError("estimator does not match the model");
  }
  const JointPrior& prior = model.prior;
  const int n = prior.n();
  const int m = prior.m();
  const double sigma = model.noise_std;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      lo = std::min(lo, model.Mean(j, i));
      hi = std::max(hi, model.Mean(j, i));
    }
  }
  // Beyond 12 sigma the densities are below 1e-31.
  lo -= 12.0 * sigma;
  hi += 12.0 * sigma;

  const Eigen::VectorXd px = prior.XMarginal();
  // Density of Z given x_j, and of Z, at a point.
  auto given_x = [&](int j, double z) {
    double d = 0.0;
    for (int i = 0; i < m; ++i) {
      const double w = px(j) > 0.0 ? prior.pmf(j, i) / px(j) : 1.0 / m;
      d += w * GaussianPdf((z - model.Mean(j, i)) / sigma) / sigma;
    }
    return d;
  };
  auto marginal = [&](double z) {
    double d = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        d += prior.pmf(j, i) * GaussianPdf((z - model.Mean(j, i)) / sigma) /
             sigma;
      }
    }
    return d;
  };

  // bin_mass(l, j) = integral over bin l of (p_Z - p_Z|X=x_j).
  const int k = partition.size();
  Eigen::MatrixXd bin_mass = Eigen::MatrixXd::Zero(k, n);
  const double h_target = sigma / 200.0;
  for (int l = 0; l < k; ++l) {
    const double a = std::max(lo, partition.Lower(l));
    const double b = std::min(hi, partition.Upper(l));
    if (!(b > a)) continue;
    int panels = static_cast<int>(std::ceil((b - a) / h_target));
    panels += panels % 2;
    const double h = (b - a) / panels;
    for (int p = 0; p <= panels; ++p) {
      const double z = a + p * h;
      const double w = (p == 0 || p == panels) ? 1.0 : (p % 2 ? 4.0 : 2.0);
      const double pz = marginal(z);
      for (int j = 0; j < n; ++j) {
        bin_mass(l, j) += w * (pz - given_x(j, z));
      }
    }
    bin_mass.row(l) *= h / 3.0;
  }
  for (int j = 0; j < n; ++j) {
    if (px(j) <= 0.0) bin_mass.col(j).setZero();
  }
  return Eigen::MatrixXd(est.probs * bin_mass);
}

}  // namespace privest
