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

#include "privest/privacy_solver.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"
#include "privest/information.h"
#include "privest/simplex_projection.h"

namespace privest {

namespace {

constexpr double kLogFloor = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr int kNonmonotoneWindow = 10;
constexpr int kMaxOuterIters = 200;
constexpr double kMuCeiling = 1e12;
constexpr double kMinStep = 1e-12;
constexpr double kMaxStep = 1e12;

struct InnerResult {
  Eigen::MatrixXd probs;
  double mutual_info = 0.0;
  int iterations = 0;
};

double ProjectedGradientNorm(const Eigen::MatrixXd& p,
                             const Eigen::MatrixXd& g) {
  return (p - ProjectSimplexColumns(p - g)).cwiseAbs().maxCoeff();
}

// Minimizes the Lagrangian over the product of simplexes for a fixed mu.
// Spectral projected gradient: Barzilai-Borwein trial steps, halving
// backtracking against the max of the last few accepted values.
InnerResult MinimizeLagrangian(const Eigen::MatrixXd& start, double mu,
                               const Channel& ch, const SolverConfig& cfg,
                               double tol) {
  InnerResult out;
  Eigen::MatrixXd p = ProjectSimplexColumns(start);
  double value = LagrangianValue(p, mu, 0.0, ch);
  Eigen::MatrixXd g = LagrangianGradient(p, mu, ch);
  std::deque<double> history{value};
  double step = cfg.step_init;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    if (ProjectedGradientNorm(p, g) <= tol) break;
    const double reference = *std::max_element(history.begin(), history.end());
    double t = step;
    Eigen::MatrixXd trial;
    double trial_value = 0.0;
    bool accepted = false;
    while (t >= kMinStep * 1e-6) {
      trial = ProjectSimplexColumns(p - t * g);
      const double decrease = g.cwiseProduct(trial - p).sum();
      trial_value = LagrangianValue(trial, mu, 0.0, ch);
      if (trial_value <= reference + kArmijo * decrease) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // no representable descent left
    Eigen::MatrixXd g_next = LagrangianGradient(trial, mu, ch);
    const Eigen::MatrixXd s = trial - p;
    const double sy = s.cwiseProduct(g_next - g).sum();
    const double ss = s.squaredNorm();
    step = sy > 0.0 ? std::clamp(ss / sy, kMinStep, kMaxStep)
                    : std::min(2.0 * t, kMaxStep);
    p = std::move(trial);
    g = std::move(g_next);
    value = trial_value;
    history.push_back(value);
    if (static_cast<int>(history.size()) > kNonmonotoneWindow) {
      history.pop_front();
    }
  }
  out.iterations = it;
  out.mutual_info = MutualInformation(p, ch);
  out.probs = std::move(p);
  return out;
}

}  // namespace

absl::Status ValidateSolverConfig(const SolverConfig& cfg, int n) {
  if (!(cfg.h0_bits >= 0.0) || cfg.h0_bits > std::log2(n) + 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrFormat("h0 must lie in [0, log2 n] = [0, %g]", std::log2(n)));
  }
  if (!(cfg.step_init > 0.0) || !(cfg.tol_kkt > 0.0) ||
      !(cfg.tol_primal > 0.0)) {
    return absl::InvalidArgumentError("step and tolerances must be positive");
  }
  if (cfg.max_iters < 1) {
    return absl::InvalidArgumentError("max_iters must be positive");
  }
  if (!(cfg.mu_lo >= 0.0) || !(cfg.mu_hi > cfg.mu_lo)) {
    return absl::InvalidArgumentError("need 0 <= mu_lo < mu_hi");
  }
  return absl::OkStatus();
}

bool RequiresPerfectPrivacy(const Channel& ch, double h0_bits) {
  return h0_bits > EntropyBits(ch.x_marginal) - 1e-9;
}

double LagrangianValue(const Eigen::MatrixXd& probs, double mu, double h0_bits,
                       const Channel& ch) {
  // mu * (h0 - H) = mu * (h0 - H(X) + I).
  const double value = ErrorProbability(probs, ch);
  if (mu == 0.0) return value;
  return value + mu * (h0_bits - EntropyBits(ch.x_marginal) +
                       MutualInformation(probs, ch));
}

Eigen::MatrixXd LagrangianGradient(const Eigen::MatrixXd& probs, double mu,
                                   const Channel& ch) {
  Eigen::MatrixXd grad = -CorrectDecisionWeights(ch);
  if (mu == 0.0) return grad;
  const Eigen::MatrixXd floored = probs.cwiseMax(kLogFloor);
  const Eigen::MatrixXd qx = ConditionalOutputPmfs(floored, ch);
  const Eigen::VectorXd q = OutputPmf(floored, ch);
  for (Eigen::Index h = 0; h < probs.rows(); ++h) {
    for (int j = 0; j < ch.n(); ++j) {
      const double px = ch.x_marginal(j);
      if (px <= 0.0) continue;
      grad.row(h) += (mu * px * std::log2(qx(h, j) / q(h))) * ch.given_x.row(j);
    }
  }
  return grad;
}

Eigen::VectorXd EstimateMultipliers(const Eigen::MatrixXd& probs,
                                    const Eigen::MatrixXd& gradient,
                                    double boundary_tol) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Eigen::VectorXd lambdas(probs.cols());
  for (Eigen::Index k = 0; k < probs.cols(); ++k) {
    // Feasible lambdas: >= -g on entries at 0 or interior, <= -g on entries
    // at 1 or interior.
    double lower = -kInf;
    double upper = kInf;
    for (Eigen::Index h = 0; h < probs.rows(); ++h) {
      const double neg_g = -gradient(h, k);
      const double p = probs(h, k);
      if (p < 1.0 - boundary_tol) lower = std::max(lower, neg_g);
      if (p > boundary_tol) upper = std::min(upper, neg_g);
    }
    if (std::isinf(lower)) {
      lambdas(k) = upper;
    } else if (std::isinf(upper)) {
      lambdas(k) = lower;
    } else {
      lambdas(k) = 0.5 * (lower + upper);
    }
  }
  return lambdas;
}

double KktResidual(const Eigen::MatrixXd& probs, double mu,
                   const Eigen::VectorXd& lambdas, const Channel& ch,
                   const SolverConfig& cfg) {
  const double tol = cfg.tol_primal;
  const Eigen::MatrixXd g = LagrangianGradient(probs, mu, ch);
  double residual = 0.0;
  for (Eigen::Index k = 0; k < probs.cols(); ++k) {
    for (Eigen::Index h = 0; h < probs.rows(); ++h) {
      const double balance = g(h, k) + lambdas(k);
      const double p = probs(h, k);
      double violation;
      if (p <= tol) {
        violation = std::max(0.0, -balance);
      } else if (p >= 1.0 - tol) {
        violation = std::max(0.0, balance);
      } else {
        violation = std::abs(balance);
      }
      residual = std::max(residual, violation);
    }
    residual = std::max(residual, std::abs(probs.col(k).sum() - 1.0));
    residual = std::max(residual, std::max(0.0, -probs.col(k).minCoeff()));
  }
  const double slack = cfg.h0_bits - ConditionalEntropy(probs, ch);
  residual = std::max(residual, std::max(0.0, slack));
  residual = std::max(residual, std::abs(mu * slack));
  return residual;
}

absl::StatusOr<PrivacyAwareSolution> SolvePrivacyAware(
    const Channel& ch, const SolverConfig& cfg) {
  if (auto s = ValidateSolverConfig(cfg, std::max(ch.n(), 2)); !s.ok()) {
    return s;
  }
  const double hx = EntropyBits(ch.x_marginal);
  if (cfg.h0_bits > hx + 1e-12) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "infeasible: h0 = %.12g bits exceeds H(X) = %.12g bits", cfg.h0_bits,
        hx));
  }
  if (RequiresPerfectPrivacy(ch, cfg.h0_bits)) {
    return absl::InvalidArgumentError(
        "h0 equals H(X): only perfectly private estimators are feasible; "
        "solve the perfect-privacy linear program instead");
  }
  const double i_max = hx - cfg.h0_bits;
  const double inner_tol = std::min(cfg.tol_kkt, cfg.tol_primal) * 1e-3;

  SolverState state;
  auto record = [&](const Eigen::MatrixXd& p, double mu) {
    const Eigen::MatrixXd g = LagrangianGradient(p, mu, ch);
    const Eigen::VectorXd lambdas = EstimateMultipliers(p, g, cfg.tol_primal);
    state.trace.push_back({state.iterations, ErrorProbability(p, ch),
                           ConditionalEntropy(p, ch), mu,
                           KktResidual(p, mu, lambdas, ch, cfg)});
  };

  const Estimator map = MapEstimator(ch);
  const double map_mi = MutualInformation(map.probs, ch);

  Eigen::MatrixXd best;
  double mu = 0.0;
  if (map_mi <= i_max) {
    best = map.probs;
    record(best, 0.0);
  } else {
    const Eigen::MatrixXd smoothed =
        (0.99 * map.probs).array() + 0.01 / ch.m();

    // Lower end: mu = 0 is solved exactly by the MAP estimator.
    double mu_lo = cfg.mu_lo;
    Eigen::MatrixXd p_lo = map.probs;
    double mi_lo = map_mi;
    if (mu_lo > 0.0) {
      InnerResult r = MinimizeLagrangian(smoothed, mu_lo, ch, cfg, inner_tol);
      state.iterations += r.iterations;
      p_lo = std::move(r.probs);
      mi_lo = r.mutual_info;
      record(p_lo, mu_lo);
    }

    double mu_hi = cfg.mu_hi;
    Eigen::MatrixXd p_hi;
    double mi_hi = 0.0;
    auto solve_at = [&](double mu_value, const Eigen::MatrixXd& warm) {
      InnerResult r = MinimizeLagrangian(warm, mu_value, ch, cfg, inner_tol);
      state.iterations += r.iterations;
      record(r.probs, mu_value);
      return r;
    };

    // A positive mu_lo that is already feasible becomes the upper end.
    while (mu_lo > 0.0 && mi_lo <= i_max) {
      mu_hi = mu_lo;
      p_hi = p_lo;
      mi_hi = mi_lo;
      mu_lo *= 0.25;
      if (mu_lo < 1e-12) {
        mu_lo = 0.0;
        p_lo = map.probs;
        mi_lo = map_mi;
      } else {
        InnerResult r = solve_at(mu_lo, p_hi);
        p_lo = std::move(r.probs);
        mi_lo = r.mutual_info;
      }
    }
    if (p_hi.size() == 0) {
      InnerResult r = solve_at(mu_hi, mu_lo > 0.0 ? p_lo : smoothed);
      p_hi = std::move(r.probs);
      mi_hi = r.mutual_info;
      while (mi_hi > i_max && mu_hi < kMuCeiling) {
        mu_lo = mu_hi;
        p_lo = p_hi;
        mi_lo = mi_hi;
        mu_hi *= 4.0;
        r = solve_at(mu_hi, p_lo);
        p_hi = std::move(r.probs);
        mi_hi = r.mutual_info;
      }
    }
    if (mi_hi > i_max) {
      // The constant estimator declaring the a priori most likely output is
      // independent of X and always feasible.
      Eigen::Index top;
      ch.y_marginal.maxCoeff(&top);
      p_hi = DeterministicEstimator(ch, static_cast<int>(top)).probs;
      mi_hi = 0.0;
    }

    for (int outer = 0; outer < kMaxOuterIters; ++outer) {
      if (mu_hi - mu_lo <= 1e-13 * std::max(1.0, mu_hi)) break;
      if (i_max - mi_hi <= 1e-3 * cfg.tol_primal) break;
      const double mid = (mu_lo > 0.0 && mu_hi > 2.0 * mu_lo)
                             ? std::sqrt(mu_lo * mu_hi)
                             : 0.5 * (mu_lo + mu_hi);
      InnerResult r = solve_at(mid, p_hi);
      if (r.mutual_info <= i_max) {
        mu_hi = mid;
        p_hi = std::move(r.probs);
        mi_hi = r.mutual_info;
      } else {
        mu_lo = mid;
        p_lo = std::move(r.probs);
        mi_lo = r.mutual_info;
      }
    }

    // The Lagrangian minimizer may jump across the target as mu crosses its
    // optimal value. Both ends then minimize (nearly) the same Lagrangian and
    // the optimum lies on the segment between them, where the leakage is
    // convex and the error is linear.
    double theta_lo = 0.0;
    double theta_hi = 1.0;
    if (mi_hi < i_max) {
      for (int k = 0; k < 200 && theta_hi - theta_lo > 1e-16; ++k) {
        const double theta = 0.5 * (theta_lo + theta_hi);
        const Eigen::MatrixXd mix = theta * p_lo + (1.0 - theta) * p_hi;
        if (MutualInformation(mix, ch) <= i_max) {
          theta_lo = theta;
        } else {
          theta_hi = theta;
        }
      }
    }
    best = theta_lo * p_lo + (1.0 - theta_lo) * p_hi;
    mu = theta_lo * mu_lo + (1.0 - theta_lo) * mu_hi;
    record(best, mu);
  }

  state.probs = best;
  state.mu = mu;
  const Eigen::MatrixXd g = LagrangianGradient(best, mu, ch);
  state.lambdas = EstimateMultipliers(best, g, cfg.tol_primal);
  state.kkt_residual = KktResidual(best, mu, state.lambdas, ch, cfg);
  state.certified = state.kkt_residual <= cfg.tol_kkt;
  state.constraint_active =
      ConditionalEntropy(best, ch) <= cfg.h0_bits + 1e-3 * cfg.tol_kkt;

  PrivacyAwareSolution solution;
  solution.estimator.probs = best;
  solution.estimator.output_labels = ch.prior.YLabels();
  solution.state = std::move(state);
  auto report = Evaluate(solution.estimator, ch);
  if (!report.ok()) return report.status();
  solution.report = *report;
  return solution;
}

}  // namespace privest
