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

#include "privest/experiments.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "privest/estimator.h"
#include "privest/io.h"
#include "privest/monte_carlo.h"
#include "privest/perfect_privacy.h"
#include "privest/rng.h"

namespace privest {

namespace {

// P(sensor reveals y_k | x_j, y_i) for the per-sensor MAP rule, as
// table[j * m + i](k).
std::vector<Eigen::VectorXd> RevealedOutputTable(const Channel& base) {
  const Estimator map = MapEstimator(base);
  std::vector<Eigen::VectorXd> table;
  for (Eigen::Index r = 0; r < base.given_xy.rows(); ++r) {
    table.push_back(map.probs * base.given_xy.row(r).transpose());
  }
  return table;
}

// log P(v | x_j) for a vector of revealed outputs, via log-sum-exp over y.
double LogLikelihood(const JointPrior& prior,
                     const std::vector<Eigen::VectorXd>& table, int j,
                     const std::vector<int>& revealed) {
  const int m = prior.m();
  const double px = prior.pmf.row(j).sum();
  std::vector<double> terms;
  for (int i = 0; i < m; ++i) {
    const double w = px > 0.0 ? prior.pmf(j, i) / px : 0.0;
    if (w <= 0.0) continue;
    double t = std::log(w);
    for (int k : revealed) t += std::log(table[j * m + i](k));
    terms.push_back(t);
  }
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  if (std::isinf(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

int MapOfX(const JointPrior& prior, const Eigen::VectorXd& px,
           const std::vector<Eigen::VectorXd>& table,
           const std::vector<int>& revealed) {
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < prior.n(); ++j) {
    if (px(j) <= 0.0) continue;
    const double score = std::log(px(j)) + LogLikelihood(prior, table, j, revealed);
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

ObliviousRow ExactOblivious(const Channel& base,
                            const std::vector<Eigen::VectorXd>& table,
                            int sensors) {
  const int m = base.m();
  const int n = base.n();
  std::vector<int> revealed(sensors, 0);
  double correct = 0.0;
  while (true) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
      if (base.x_marginal(j) <= 0.0) continue;
      best = std::max(best, base.x_marginal(j) *
                                std::exp(LogLikelihood(base.prior, table, j,
                                                       revealed)));
    }
    correct += best;
    int s = 0;
    while (s < sensors && ++revealed[s] == m) revealed[s++] = 0;
    if (s == sensors) break;
  }
  return {sensors, 1.0 - correct, 0.0, true};
}

ObliviousRow SimulatedOblivious(const ExperimentConfig& cfg,
                                const Channel& base,
                                const std::vector<Eigen::VectorXd>& table,
                                int sensors) {
  const Estimator map = MapEstimator(base);
  std::vector<int> per_bin(base.symbols());
  for (int l = 0; l < base.symbols(); ++l) {
    Eigen::Index k;
    map.probs.col(l).maxCoeff(&k);
    per_bin[l] = static_cast<int>(k);
  }
  SplitMix64 rng = SplitMix64::Substream(cfg.seed, 1000 + sensors);
  const JointPrior& prior = cfg.model.prior;
  const int m = prior.m();
  std::int64_t errors = 0;
  std::vector<int> revealed(sensors);
  for (std::int64_t t = 0; t < cfg.trials; ++t) {
    // Inverse-CDF draw of (x, y) in row-major order.
    const double u = UniformDouble(rng);
    double cumulative = 0.0;
    int cell = prior.n() * m - 1;
    for (int c = 0; c < prior.n() * m; ++c) {
      cumulative += prior.pmf(c / m, c % m);
      if (u < cumulative) {
        cell = c;
        break;
      }
    }
    const int x = cell / m;
    const double mean = cfg.model.Mean(x, cell % m);
    for (int s = 0; s < sensors; ++s) {
      const double z = mean + cfg.model.noise_std * StandardNormal(rng);
      revealed[s] = per_bin[cfg.partition.BinOf(z)];
    }
    if (MapOfX(prior, base.x_marginal, table, revealed) != x) ++errors;
  }
  const double p = static_cast<double>(errors) / static_cast<double>(cfg.trials);
  return {sensors, p, BinomialSigma(p, cfg.trials), false};
}

std::string Fmt(double v) { return FormatDouble(v); }

std::string ExperimentMetadata(const ExperimentConfig& cfg) {
  nlohmann::ordered_json meta;
  meta["trials"] = cfg.trials;
  meta["seed"] = cfg.seed;
  meta["generator"] = "splitmix64";
  meta["model"] = {{"a", cfg.model.a},
                   {"b", cfg.model.b},
                   {"c", cfg.model.c},
                   {"noise_std", cfg.model.noise_std}};
  meta["edges"] = cfg.partition.edges;
  meta["sensor_counts"] = cfg.sensor_counts;
  meta["count_cap"] = cfg.count_cap;
  meta["exact_limit"] = cfg.exact_limit;
  return meta.dump(2) + "\n";
}

}  // namespace

absl::Status ValidateExperimentConfig(const ExperimentConfig& cfg) {
  if (auto s = ValidateSensorModel(cfg.model); !s.ok()) return s;
  if (auto p = MakePartition(cfg.partition.edges); !p.ok()) return p.status();
  if (cfg.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (cfg.sensor_counts.empty()) {
    return absl::InvalidArgumentError("sensor_counts is empty");
  }
  for (int s : cfg.sensor_counts) {
    if (s < 1) return absl::InvalidArgumentError("sensor counts must be >= 1");
    if (CompositionCount(s, cfg.partition.size()) > cfg.count_cap) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%d sensors exceed the count-alphabet cap %d", s, cfg.count_cap));
    }
  }
  return absl::OkStatus();
}

ExperimentConfig ReferenceExperiment() {
  ExperimentConfig cfg;
  cfg.model = ReferenceSensorModel();
  cfg.partition = ReferencePartition();
  for (int s = 1; s <= 10; ++s) cfg.sensor_counts.push_back(s);
  return cfg;
}

absl::StatusOr<std::vector<ObliviousRow>> RunObliviousBaseline(
    const ExperimentConfig& cfg) {
  if (auto s = ValidateExperimentConfig(cfg); !s.ok()) return s;
  auto base = BuildChannel(cfg.model, cfg.partition);
  if (!base.ok()) return base.status();
  const std::vector<Eigen::VectorXd> table = RevealedOutputTable(*base);
  std::vector<ObliviousRow> rows;
  for (int sensors : cfg.sensor_counts) {
    const double vectors = std::pow(static_cast<double>(base->m()), sensors);
    if (vectors <= static_cast<double>(cfg.exact_limit)) {
      rows.push_back(ExactOblivious(*base, table, sensors));
    } else {
      rows.push_back(SimulatedOblivious(cfg, *base, table, sensors));
    }
  }
  return rows;
}

absl::StatusOr<std::vector<PerfectRow>> RunPerfectPrivacyExperiment(
    const ExperimentConfig& cfg) {
  if (auto s = ValidateExperimentConfig(cfg); !s.ok()) return s;
  auto base = BuildChannel(cfg.model, cfg.partition);
  if (!base.ok()) return base.status();
  std::vector<PerfectRow> rows;
  for (int sensors : cfg.sensor_counts) {
    auto alphabet =
        EnumerateCounts(sensors, cfg.partition.size(), cfg.count_cap);
    if (!alphabet.ok()) return alphabet.status();
    auto shared = std::make_shared<const CountAlphabet>(*std::move(alphabet));
    auto ch = CountChannel(*base, *shared);
    if (!ch.ok()) return ch.status();
    auto pp = SolvePerfectPrivacy(*ch, cfg.pp_residual_tol);
    if (!pp.ok()) return pp.status();
    const Estimator map = MapEstimator(*ch);

    auto sampler =
        SensorArraySampler(cfg.model, cfg.partition, sensors, shared);
    if (!sampler.ok()) return sampler.status();
    const std::vector<Estimator> policies{pp->estimator, map};
    MonteCarloOptions options;
    options.trials = cfg.trials;
    options.seed = SplitMix64::Mix(cfg.seed + static_cast<std::uint64_t>(sensors));
    auto mc = MonteCarloEval(policies, *sampler, options);
    if (!mc.ok()) return mc.status();

    PerfectRow row;
    row.sensors = sensors;
    row.symbols = ch->symbols();
    row.err_pp = pp->report.error_prob;
    row.err_pp_mc = mc->policies[0].error_prob;
    row.err_oblivious = ErrorProbability(map.probs, *ch);
    row.err_oblivious_mc = mc->policies[1].error_prob;
    row.gap = row.err_pp - row.err_oblivious;
    row.mi_pp_bits = pp->report.mutual_info_bits;
    row.pp_residual = pp->report.pp_residual;
    row.pp_agrees = WithinSigmas(row.err_pp, row.err_pp_mc, cfg.trials);
    row.oblivious_agrees =
        WithinSigmas(row.err_oblivious, row.err_oblivious_mc, cfg.trials);
    row.lp_unique = pp->certificate.unique;
    row.x_given_output = mc->policies[0].x_given_output;
    row.output_freq = mc->policies[0].output_freq;
    rows.push_back(std::move(row));
  }
  return rows;
}

absl::StatusOr<std::vector<SweepRow>> RunPrivacySweep(const Channel& ch,
                                                      const SolverConfig& base,
                                                      int points) {
  if (points < 1) return absl::InvalidArgumentError("points must be >= 1");
  const double hx = EntropyBits(ch.x_marginal);
  std::vector<SweepRow> rows;
  for (int k = 0; k < points; ++k) {
    SolverConfig cfg = base;
    cfg.h0_bits = hx * k / points;
    auto sol = SolvePrivacyAware(ch, cfg);
    if (!sol.ok()) return sol.status();
    rows.push_back({cfg.h0_bits, sol->report.cond_entropy_bits,
                    sol->report.error_prob, sol->state.mu,
                    sol->state.kkt_residual, sol->state.certified,
                    sol->state.constraint_active});
  }
  return rows;
}

absl::Status WriteObliviousTables(const std::vector<ObliviousRow>& rows,
                                  const ExperimentConfig& cfg,
                                  const std::filesystem::path& dir) {
  Table table({"sensors", "error_x", "sigma", "mode"});
  for (const ObliviousRow& r : rows) {
    table.AddRow({absl::StrCat(r.sensors), Fmt(r.error_x), Fmt(r.sigma),
                  r.exact ? "exact" : "monte_carlo"});
  }
  return WriteTable(table, dir, "oblivious", ExperimentMetadata(cfg));
}

absl::Status WritePerfectTables(const std::vector<PerfectRow>& rows,
                                const ExperimentConfig& cfg,
                                const std::filesystem::path& dir) {
  Table errors({"sensors", "symbols", "err_pp", "err_pp_mc", "err_oblivious",
                "err_oblivious_mc", "gap", "mi_pp_bits", "pp_residual",
                "pp_agrees_3sigma", "oblivious_agrees_3sigma", "lp_unique"});
  for (const PerfectRow& r : rows) {
    errors.AddRow({absl::StrCat(r.sensors), absl::StrCat(r.symbols),
                   Fmt(r.err_pp), Fmt(r.err_pp_mc), Fmt(r.err_oblivious),
                   Fmt(r.err_oblivious_mc), Fmt(r.gap), Fmt(r.mi_pp_bits),
                   Fmt(r.pp_residual), r.pp_agrees ? "1" : "0",
                   r.oblivious_agrees ? "1" : "0", r.lp_unique ? "1" : "0"});
  }
  const std::vector<std::string> x_labels = cfg.model.prior.XLabels();
  const std::vector<std::string> y_labels = cfg.model.prior.YLabels();
  std::vector<std::string> header{"sensors", "y_hat", "output_freq"};
  for (const std::string& x : x_labels) {
    header.push_back(absl::StrCat("p_x_", x, "_given_y_hat"));
  }
  for (const std::string& x : x_labels) {
    header.push_back(absl::StrCat("prior_x_", x));
  }
  Table conditional(header);
  const Eigen::VectorXd px = cfg.model.prior.XMarginal();
  for (const PerfectRow& r : rows) {
    for (Eigen::Index i = 0; i < r.x_given_output.cols(); ++i) {
      std::vector<std::string> cells{absl::StrCat(r.sensors), y_labels[i],
                                     Fmt(r.output_freq(i))};
      for (Eigen::Index j = 0; j < r.x_given_output.rows(); ++j) {
        cells.push_back(Fmt(r.x_given_output(j, i)));
      }
      for (Eigen::Index j = 0; j < px.size(); ++j) cells.push_back(Fmt(px(j)));
      conditional.AddRow(std::move(cells));
    }
  }
  const std::string meta = ExperimentMetadata(cfg);
  if (auto s = WriteTable(errors, dir, "perfect_errors", meta); !s.ok()) {
    return s;
  }
  return WriteTable(conditional, dir, "perfect_conditional", meta);
}

absl::Status WriteSweepTables(const std::vector<SweepRow>& rows,
                              const std::filesystem::path& dir) {
  Table table({"h0_bits", "cond_entropy_bits", "error_prob", "mu",
               "kkt_residual", "certified", "active"});
  for (const SweepRow& r : rows) {
    table.AddRow({Fmt(r.h0_bits), Fmt(r.cond_entropy_bits), Fmt(r.error_prob),
                  Fmt(r.mu), Fmt(r.kkt_residual), r.certified ? "1" : "0",
                  r.active ? "1" : "0"});
  }
  return WriteTable(table, dir, "sweep", "");
}

}  // namespace privest
