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

// Acceptance gate. Runs each criterion, prints one PASS/FAIL line per
// criterion and exits nonzero if any fails. The oracles here evaluate error
// and equivocation from the raw prior and channel rows with plain loops, so
// they do not share code with the library kernels they check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "privest/channel.h"
#include "privest/config.h"
#include "privest/estimator.h"
#include "privest/experiments.h"
#include "privest/information.h"
#include "privest/io.h"
#include "privest/monte_carlo.h"
#include "privest/multi_sensor.h"
#include "privest/perfect_privacy.h"
#include "privest/privacy_solver.h"
#include "../test_instances.h"

namespace privest {
namespace {

using ::privest::testing::LpInstance;
using ::privest::testing::RandomChannel;
using ::privest::testing::RandomStochastic;
using ::privest::testing::ReferenceChannel;
using ::privest::testing::SolverInstance;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Independent evaluation for n = m = 2 channels from the raw tables.

struct RawBinary {
  double prior[2][2];     // P(x_j, y_i)
  double given[2][2][3];  // P(l | x_j, y_i)
};

RawBinary Raw(const Channel& ch) {
  RawBinary raw;
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      raw.prior[j][i] = ch.prior.pmf(j, i);
      for (int l = 0; l < 3; ++l) raw.given[j][i][l] = ch.given_xy(j * 2 + i, l);
    }
  }
  return raw;
}

// p0[l] = P(Yhat = y0 | obs l). Returns {error, H(X | Yhat)} in bits.
std::pair<double, double> RawMetrics(const RawBinary& raw, const double p0[3]) {
  double correct = 0.0;
  double joint[2][2] = {{0, 0}, {0, 0}};  // [yhat][x]
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      for (int l = 0; l < 3; ++l) {
        const double mass = raw.prior[j][i] * raw.given[j][i][l];
        correct += mass * (i == 0 ? p0[l] : 1.0 - p0[l]);
        joint[0][j] += mass * p0[l];
        joint[1][j] += mass * (1.0 - p0[l]);
      }
    }
  }
  double h = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double out = joint[i][0] + joint[i][1];
    for (int j = 0; j < 2; ++j) {
      if (joint[i][j] > 1e-300) h -= joint[i][j] * std::log2(joint[i][j] / out);
    }
  }
  return {1.0 - correct, h};
}

// ---------------------------------------------------------------------------

Outcome Criterion1() {
  const auto start = Clock::now();
  const SensorModel model = ReferenceSensorModel();
  const Partition partition = ReferencePartition();
  auto base = BuildChannel(model, partition);
  auto alphabet = EnumerateCounts(10, partition.size());
  if (!base.ok() || !alphabet.ok()) return {false, "setup failed"};
  auto shared = std::make_shared<const CountAlphabet>(*alphabet);
  auto ch = CountChannel(*base, *shared);
  if (!ch.ok()) return {false, std::string(ch.status().message())};
  auto pp = SolvePerfectPrivacy(*ch);
  if (!pp.ok()) return {false, std::string(pp.status().message())};
  auto sampler = SensorArraySampler(model, partition, 10, shared);
  if (!sampler.ok()) return {false, "sampler"};
  MonteCarloOptions options;
  options.trials = 100000;
  options.seed = 2018;
  auto mc = MonteCarloEval(pp->estimator, *sampler, options);
  if (!mc.ok()) return {false, "monte carlo"};
  double worst = 0.0;
  bool all_seen = true;
  for (int i = 0; i < ch->m(); ++i) {
    const double v = mc->x_given_output(1, i);
    if (std::isnan(v)) {
      all_seen = false;
      continue;
    }
    worst = std::max(worst, std::abs(v - 0.3));
  }
  const double secs = Seconds(start);
  const bool pass = pp->report.pp_residual <= 1e-9 && worst <= 0.02 &&
                    all_seen && secs <= 60.0;
  return {pass,
          absl::StrFormat("residual=%.3g max|P(X=1|Yhat)-0.3|=%.4f time=%.1fs",
                          pp->report.pp_residual, worst, secs)};
}

Outcome Criterion2() {
  const auto start = Clock::now();
  ExperimentConfig cfg = ReferenceExperiment();
  cfg.sensor_counts = {1, 10};
  auto rows = RunObliviousBaseline(cfg);
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  const ObliviousRow& one = (*rows)[0];
  const ObliviousRow& ten = (*rows)[1];
  bool separated = ten.error_x < one.error_x;
  if (!one.exact || !ten.exact) {
    separated = ten.error_x + 3 * ten.sigma < one.error_x - 3 * one.sigma;
  }
  const double secs = Seconds(start);
  return {separated && secs <= 60.0,
          absl::StrFormat("err(M=1)=%.6f err(M=10)=%.6f exact=%d time=%.1fs",
                          one.error_x, ten.error_x, one.exact && ten.exact,
                          secs)};
}

Outcome Criterion3() {
  ExperimentConfig cfg = ReferenceExperiment();
  cfg.trials = 100000;
  auto rows = RunPerfectPrivacyExperiment(cfg);
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  bool pass = true;
  std::string gaps;
  for (const PerfectRow& r : *rows) {
    pass = pass && r.err_pp >= r.err_oblivious - 1e-12 && r.pp_agrees &&
           r.oblivious_agrees;
    absl::StrAppend(&gaps, gaps.empty() ? "" : " ",
                    absl::StrFormat("M%d:%.4f", r.sensors, r.gap));
  }
  return {pass, absl::StrCat("gaps ", gaps)};
}

Outcome Criterion4() {
  const auto start = Clock::now();
  const Channel ch = SolverInstance();
  const RawBinary raw = Raw(ch);
  const double h0 = 0.5;
  double grid = 1.0;
  const int steps = 200;  // resolution 0.005
  double p0[3];
  for (int a = 0; a <= steps; ++a) {
    p0[0] = a / double(steps);
    for (int b = 0; b <= steps; ++b) {
      p0[1] = b / double(steps);
      for (int c = 0; c <= steps; ++c) {
        p0[2] = c / double(steps);
        const auto [err, h] = RawMetrics(raw, p0);
        if (h >= h0 && err < grid) grid = err;
      }
    }
  }
  SolverConfig cfg;
  cfg.h0_bits = h0;
  auto sol = SolvePrivacyAware(ch, cfg);
  if (!sol.ok()) return {false, std::string(sol.status().message())};
  const double p_sol[3] = {sol->estimator.probs(0, 0), sol->estimator.probs(0, 1),
                           sol->estimator.probs(0, 2)};
  const auto [err, h] = RawMetrics(raw, p_sol);
  const double secs = Seconds(start);
  const bool pass = std::abs(err - grid) <= 5e-3 && h >= h0 - 1e-6 &&
                    sol->state.kkt_residual <= 1e-6 && secs <= 120.0;
  return {pass,
          absl::StrFormat("solver=%.6f grid=%.6f H=%.6f kkt=%.2e time=%.1fs",
                          err, grid, h, sol->state.kkt_residual, secs)};
}

Outcome Criterion5() {
  const Channel ch = LpInstance();
  const RawBinary raw = Raw(ch);
  // phi(l) = P(l | x0) - P(l); privacy of the m = 2 estimator reduces to
  // phi . p0 = 0 since every row of phi sums to zero.
  double px[2], phi[3];
  for (int j = 0; j < 2; ++j) px[j] = raw.prior[j][0] + raw.prior[j][1];
  for (int l = 0; l < 3; ++l) {
    double given_x0 = 0.0, marginal = 0.0;
    for (int i = 0; i < 2; ++i) {
      given_x0 += raw.prior[0][i] * raw.given[0][i][l] / px[0];
      for (int j = 0; j < 2; ++j) marginal += raw.prior[j][i] * raw.given[j][i][l];
    }
    phi[l] = given_x0 - marginal;
  }
  int solved = 0;
  for (int l = 1; l < 3; ++l) {
    if (std::abs(phi[l]) > std::abs(phi[solved])) solved = l;
  }
  const int f0 = solved == 0 ? 1 : 0;
  const int f1 = solved == 2 ? 1 : 2;
  const int steps = 500;  // resolution 0.002
  double grid = 1.0;
  double p0[3];
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      p0[f0] = a / double(steps);
      p0[f1] = b / double(steps);
      p0[solved] = -(phi[f0] * p0[f0] + phi[f1] * p0[f1]) / phi[solved];
      if (p0[solved] < 0.0 || p0[solved] > 1.0) continue;
      grid = std::min(grid, RawMetrics(raw, p0).first);
    }
  }
  auto sol = SolvePerfectPrivacy(ch);
  if (!sol.ok()) return {false, std::string(sol.status().message())};
  const bool pass = std::abs(sol->report.error_prob - grid) <= 2e-3;
  return {pass, absl::StrFormat("lp=%.6f grid=%.6f", sol->report.error_prob,
                                grid)};
}

// L = error + mu (h0 - H(X | Yhat)) from the raw tables, for any n, m, K.
double RawLagrangian(const Channel& ch, const Eigen::MatrixXd& p, double mu,
                     double h0) {
  const int n = ch.n(), m = ch.m(), k = ch.symbols();
  double correct = 0.0;
  std::vector<double> joint(m * n, 0.0);  // [yhat * n + x]
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      for (int l = 0; l < k; ++l) {
        const double mass = ch.prior.pmf(j, i) * ch.given_xy(j * m + i, l);
        correct += mass * p(i, l);
        for (int h = 0; h < m; ++h) joint[h * n + j] += mass * p(h, l);
      }
    }
  }
  double cond = 0.0;
  for (int h = 0; h < m; ++h) {
    double out = 0.0;
    for (int j = 0; j < n; ++j) out += joint[h * n + j];
    for (int j = 0; j < n; ++j) {
      const double v = joint[h * n + j];
      if (v > 0.0) cond -= v * std::log2(v / out);
    }
  }
  return (1.0 - correct) + mu * (h0 - cond);
}

Outcome Criterion6() {
  std::mt19937_64 rng(6);
  const std::vector<Channel> channels = {ReferenceChannel(), SolverInstance()};
  double worst = 0.0;
  int points = 0;
  for (double mu : {0.1, 1.0, 10.0}) {
    for (int t = 0; t < 50; ++t) {
      const Channel& ch = channels[t % channels.size()];
      const Eigen::MatrixXd p = RandomStochastic(rng, ch.m(), ch.symbols());
      const Eigen::MatrixXd g = LagrangianGradient(p, mu, ch);
      Eigen::MatrixXd fd(p.rows(), p.cols());
      const double step = 1e-6;
      for (Eigen::Index r = 0; r < p.rows(); ++r) {
        for (Eigen::Index c = 0; c < p.cols(); ++c) {
          Eigen::MatrixXd plus = p, minus = p;
          plus(r, c) += step;
          minus(r, c) -= step;
          fd(r, c) = (RawLagrangian(ch, plus, mu, 0.4) -
                      RawLagrangian(ch, minus, mu, 0.4)) /
                     (2 * step);
        }
      }
      // Off the simplex the two entropy formulas differ by a term that is
      // linear in each column sum, so only the tangent components compare.
      const Eigen::MatrixXd gt = g.rowwise() - g.colwise().mean();
      const Eigen::MatrixXd ft = fd.rowwise() - fd.colwise().mean();
      worst = std::max(worst, (gt - ft).cwiseAbs().maxCoeff() /
                                  ft.cwiseAbs().maxCoeff());
      ++points;
    }
  }
  return {worst <= 1e-5,
          absl::StrFormat("max relative error %.2e over %d points", worst,
                          points)};
}

Outcome Criterion7() {
  std::mt19937_64 rng(7);
  double chain = 0.0, convex = -1.0;
  for (int t = 0; t < 100; ++t) {
    const Channel ch = RandomChannel(rng, 2 + t % 3, 2 + t % 2, 3 + t % 4);
    const Eigen::MatrixXd p = RandomStochastic(rng, ch.m(), ch.symbols());
    const Eigen::MatrixXd q = RandomStochastic(rng, ch.m(), ch.symbols());
    const double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    chain = std::max(chain, std::abs(ConditionalEntropy(p, ch) +
                                     MutualInformation(p, ch) -
                                     EntropyBits(ch.x_marginal)));
    const double lhs = MutualInformation((a * p + (1 - a) * q).eval(), ch);
    const double rhs =
        a * MutualInformation(p, ch) + (1 - a) * MutualInformation(q, ch);
    convex = std::max(convex, lhs - rhs);
  }
  return {chain <= 1e-9 && convex <= 1e-9,
          absl::StrFormat("chain identity error %.2e, max convexity excess %.2e",
                          chain, convex)};
}

Outcome Criterion8() {
  std::vector<Channel> channels = {ReferenceChannel(), SolverInstance(),
                                   LpInstance()};
  auto base = BuildChannel(ReferenceSensorModel(), ReferencePartition());
  if (!base.ok()) return {false, "setup"};
  for (int sensors = 2; sensors <= 5; ++sensors) {
    auto alphabet = EnumerateCounts(sensors, 4);
    if (!alphabet.ok()) return {false, "alphabet"};
    auto ch = CountChannel(*base, *alphabet);
    if (!ch.ok()) return {false, "count channel"};
    channels.push_back(*std::move(ch));
  }
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    channels.push_back(RandomChannel(rng, n, 2 + t % 2, n + 1 + t % 4));
  }
  int passed = 0;
  for (const Channel& ch : channels) {
    auto check = IsPerfectlyPrivate(UniformEstimator(ch), BuildPhi(ch), 1e-12);
    auto lp = SolvePerfectPrivacy(ch);
    if (check.ok() && check->is_private && lp.ok()) ++passed;
  }
  return {passed == static_cast<int>(channels.size()),
          absl::StrFormat("%d of %d channels", passed, channels.size())};
}

Outcome Criterion9() {
  bool pass = true;
  std::string detail;
  for (const auto& [name, ch] : {std::pair<const char*, Channel>{
                                     "small", SolverInstance()},
                                 {"reference", ReferenceChannel()}}) {
    auto rows = RunPrivacySweep(ch, SolverConfig(), 10);
    if (!rows.ok()) return {false, std::string(rows.status().message())};
    double worst_drop = 0.0;
    for (size_t k = 1; k < rows->size(); ++k) {
      worst_drop = std::max(worst_drop,
                            (*rows)[k - 1].error_prob - (*rows)[k].error_prob);
    }
    pass = pass && worst_drop <= 1e-6;
    absl::StrAppend(&detail, detail.empty() ? "" : ", ", name,
                    absl::StrFormat(" err %.4f..%.4f", rows->front().error_prob,
                                    rows->back().error_prob));
  }
  return {pass, detail};
}

Outcome Criterion10() {
  const std::filesystem::path root =
      std::filesystem::temp_directory_path() / "privest_acceptance";
  std::filesystem::remove_all(root);
  const std::filesystem::path config = root / "reference.json";
  if (!WriteTextFile(config, ReferenceConfigJson()).ok()) {
    return {false, "cannot write config"};
  }
  for (const char* run : {"a", "b"}) {
    const std::string cmd =
        absl::StrCat("\"", PRIVEST_CLI_PATH, "\" experiment perfect --config \"",
                     config.string(), "\" --out \"", (root / run).string(),
                     "\" --seed 7");
    if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed"};
  }
  int compared = 0;
  for (const auto& entry : std::filesystem::directory_iterator(root / "a")) {
    if (entry.path().extension() != ".csv") continue;
    auto x = ReadTextFile(entry.path());
    auto y = ReadTextFile(root / "b" / entry.path().filename());
    if (!x.ok() || !y.ok() || *x != *y) {
      return {false, absl::StrCat("differs: ", entry.path().filename().string())};
    }
    ++compared;
  }
  return {compared >= 2, absl::StrFormat("%d CSV files identical", compared)};
}

}  // namespace
}  // namespace privest

int main() {
  const std::vector<std::pair<const char*, std::function<privest::Outcome()>>>
      criteria = {
          {"AC1 perfect-privacy independence", privest::Criterion1},
          {"AC2 oblivious leakage growth", privest::Criterion2},
          {"AC3 error ordering", privest::Criterion3},
          {"AC4 solver vs grid oracle", privest::Criterion4},
          {"AC5 LP vs grid oracle", privest::Criterion5},
          {"AC6 gradient vs finite differences", privest::Criterion6},
          {"AC7 information identities", privest::Criterion7},
          {"AC8 feasibility construction", privest::Criterion8},
          {"AC9 monotone frontier", privest::Criterion9},
          {"AC10 determinism", privest::Criterion10},
      };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const privest::Outcome o = run();
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
