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

// Command-line front end.
//
//   privest design --config model.json --out dir --h0 0.5
//   privest design --config model.json --out dir --perfect [--sensors 3]
//   privest evaluate --config model.json --estimator dir/estimator.csv
//   privest experiment perfect --config model.json --out dir [--trials N]
//   privest channel --config model.json --out dir
//   privest template
//
// Exit status: 0 on success, 2 when the requested design is infeasible, 3
// when the solver stops without meeting its stationarity tolerance, 1 for any
// other error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "privest/channel.h"
#include "privest/config.h"
#include "privest/estimator.h"
#include "privest/experiments.h"
#include "privest/io.h"
#include "privest/perfect_privacy.h"
#include "privest/privacy_solver.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNotConverged = 3;

namespace fs = std::filesystem;

int Fail(const absl::Status& status) {
  std::cerr << "privest: " << status << "\n";
  return status.code() == absl::StatusCode::kFailedPrecondition
             ? kExitInfeasible
             : kExitError;
}

struct CommonArgs {
  std::string config;
  std::string out;
  std::optional<int> sensors;
};

absl::StatusOr<privest::RunConfig> Load(const CommonArgs& args) {
  auto cfg = privest::LoadConfig(args.config);
  if (!cfg.ok()) return cfg.status();
  if (args.sensors.has_value()) {
    if (*args.sensors < 1) {
      return absl::InvalidArgumentError("--sensors must be at least 1");
    }
    cfg->sensors = *args.sensors;
    cfg->experiment.sensor_counts = {*args.sensors};
  }
  return cfg;
}

absl::Status WriteReport(const privest::PrivacyReport& report,
                         const fs::path& dir) {
  if (auto s = privest::WriteTextFile(dir / "report.txt",
                                      privest::ReportText(report));
      !s.ok()) {
    return s;
  }
  return privest::WriteTextFile(dir / "report.json",
                                privest::ReportJson(report).dump(2) + "\n");
}

absl::Status WritePhi(const privest::Channel& ch, const fs::path& dir) {
  const privest::PhiMatrix phi = privest::BuildPhi(ch);
  if (auto s = privest::WriteTextFile(
          dir / "phi.csv",
          privest::MatrixCsv(phi.data, ch.prior.XLabels(), ch.symbol_labels,
                             "x"));
      !s.ok()) {
    return s;
  }
  const Eigen::MatrixXd basis = privest::NullSpaceBasis(phi);
  std::vector<std::string> cols;
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    cols.push_back(absl::StrCat("v", c));
  }
  return privest::WriteTextFile(
      dir / "null_space.csv",
      privest::MatrixCsv(basis, ch.symbol_labels, cols, "symbol"));
}

int RunDesignSolver(const privest::Channel& ch, privest::SolverConfig solver,
                    const fs::path& out) {
  auto sol = privest::SolvePrivacyAware(ch, solver);
  if (!sol.ok()) return Fail(sol.status());
  for (const auto& [name, text] :
       {std::pair<const char*, std::string>{
            "estimator.csv",
            privest::EstimatorCsv(sol->estimator, ch.symbol_labels)},
        {"trace.csv", privest::TraceCsv(sol->state.trace)}}) {
    if (auto s = privest::WriteTextFile(out / name, text); !s.ok()) {
      return Fail(s);
    }
  }
  if (auto s = WriteReport(sol->report, out); !s.ok()) return Fail(s);
  std::cout << privest::ReportText(sol->report)
            << "mu=" << privest::FormatDouble(sol->state.mu) << "\n"
            << "kkt_residual=" << privest::FormatDouble(sol->state.kkt_residual)
            << "\n"
            << "constraint_active=" << (sol->state.constraint_active ? 1 : 0)
            << "\n";
  if (!sol->state.certified) {
    std::cerr << "privest: stationarity residual "
              << sol->state.kkt_residual << " exceeds tol_kkt "
              << solver.tol_kkt << "\n";
    return kExitNotConverged;
  }
  return 0;
}

int RunDesignPerfect(const privest::Channel& ch, double residual_tol,
                     const fs::path& out) {
  auto sol = privest::SolvePerfectPrivacy(ch, residual_tol);
  if (!sol.ok()) return Fail(sol.status());
  for (const auto& [name, text] :
       {std::pair<const char*, std::string>{
            "estimator.csv",
            privest::EstimatorCsv(sol->estimator, ch.symbol_labels)},
        {"lp_certificate.csv",
         privest::LpCertificateCsv(sol->certificate, sol->estimator,
                                   ch.symbol_labels)}}) {
    if (auto s = privest::WriteTextFile(out / name, text); !s.ok()) {
      return Fail(s);
    }
  }
  if (auto s = WritePhi(ch, out); !s.ok()) return Fail(s);
  if (auto s = WriteReport(sol->report, out); !s.ok()) return Fail(s);
  std::cout << privest::ReportText(sol->report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-aware estimation of a public variable"};
  app.require_subcommand(1);

  CommonArgs design_args;
  std::optional<double> h0;
  bool perfect = false;
  auto* design = app.add_subcommand(
      "design", "Compute an estimator under a privacy requirement");
  design->add_option("--config", design_args.config, "JSON model file")
      ->required()
      ->check(CLI::ExistingFile);
  design->add_option("--out", design_args.out, "Output directory")->required();
  design->add_option("--sensors", design_args.sensors,
                     "Number of sensors (overrides the config)");
  auto* h0_opt =
      design->add_option("--h0", h0, "Required H(X | Yhat) in bits");
  auto* perfect_opt =
      design->add_flag("--perfect", perfect, "Require Yhat independent of X");
  h0_opt->excludes(perfect_opt);

  CommonArgs eval_args;
  std::string estimator_path;
  auto* evaluate =
      app.add_subcommand("evaluate", "Report error and leakage of an estimator");
  evaluate->add_option("--config", eval_args.config, "JSON model file")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--estimator", estimator_path, "Estimator CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--out", eval_args.out, "Optional output directory");
  evaluate->add_option("--sensors", eval_args.sensors,
                       "Number of sensors (overrides the config)");

  CommonArgs exp_args;
  std::string kind;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  int points = 10;
  auto* experiment =
      app.add_subcommand("experiment", "Run a reproducible experiment");
  experiment->add_option("kind", kind, "oblivious, perfect or sweep")
      ->required()
      ->check(CLI::IsMember({"oblivious", "perfect", "sweep"}));
  experiment->add_option("--config", exp_args.config, "JSON model file")
      ->required()
      ->check(CLI::ExistingFile);
  experiment->add_option("--out", exp_args.out, "Output directory")
      ->required();
  experiment->add_option("--trials", trials, "Monte-Carlo trials");
  experiment->add_option("--seed", seed, "Random seed");
  experiment->add_option("--points", points, "Sweep points")
      ->check(CLI::PositiveNumber);

  CommonArgs channel_args;
  auto* channel = app.add_subcommand(
      "channel", "Write the observation channel and its privacy structure");
  channel->add_option("--config", channel_args.config, "JSON model file")
      ->required()
      ->check(CLI::ExistingFile);
  channel->add_option("--out", channel_args.out, "Output directory")
      ->required();
  channel->add_option("--sensors", channel_args.sensors,
                      "Number of sensors (overrides the config)");

  app.add_subcommand("template", "Print the reference configuration");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("template")) {
    std::cout << privest::ReferenceConfigJson();
    return 0;
  }

  if (*design) {
    if (!h0.has_value() && !perfect) {
      std::cerr << "privest: design needs --h0 or --perfect\n";
      return kExitError;
    }
    auto cfg = Load(design_args);
    if (!cfg.ok()) return Fail(cfg.status());
    auto ch = privest::BuildRunChannel(*cfg);
    if (!ch.ok()) return Fail(ch.status());
    if (!perfect) {
      cfg->solver.h0_bits = *h0;
      const double hx = privest::EntropyBits(ch->x_marginal);
      if (*h0 > hx + 1e-12) {
        std::cerr << "privest: h0 = " << *h0 << " exceeds H(X) = " << hx
                  << "\n";
        return kExitInfeasible;
      }
      perfect = privest::RequiresPerfectPrivacy(*ch, *h0);
    }
    if (perfect) {
      return RunDesignPerfect(*ch, cfg->pp_residual_tol, design_args.out);
    }
    return RunDesignSolver(*ch, cfg->solver, design_args.out);
  }

  if (*evaluate) {
    auto cfg = Load(eval_args);
    if (!cfg.ok()) return Fail(cfg.status());
    auto ch = privest::BuildRunChannel(*cfg);
    if (!ch.ok()) return Fail(ch.status());
    auto text = privest::ReadTextFile(estimator_path);
    if (!text.ok()) return Fail(text.status());
    auto est = privest::ParseEstimatorCsv(*text);
    if (!est.ok()) return Fail(est.status());
    auto report = privest::Evaluate(*est, *ch);
    if (!report.ok()) return Fail(report.status());
    std::cout << privest::ReportText(*report);
    if (!eval_args.out.empty()) {
      if (auto s = WriteReport(*report, eval_args.out); !s.ok()) {
        return Fail(s);
      }
    }
    return 0;
  }

  if (*experiment) {
    auto cfg = Load(exp_args);
    if (!cfg.ok()) return Fail(cfg.status());
    if (trials.has_value()) cfg->experiment.trials = *trials;
    if (seed.has_value()) cfg->experiment.seed = *seed;
    absl::Status status;
    if (kind == "oblivious") {
      auto rows = privest::RunObliviousBaseline(cfg->experiment);
      status = rows.ok() ? privest::WriteObliviousTables(
                               *rows, cfg->experiment, exp_args.out)
                         : rows.status();
    } else if (kind == "perfect") {
      auto rows = privest::RunPerfectPrivacyExperiment(cfg->experiment);
      status = rows.ok() ? privest::WritePerfectTables(*rows, cfg->experiment,
                                                       exp_args.out)
                         : rows.status();
    } else {
      auto ch = privest::BuildRunChannel(*cfg);
      if (!ch.ok()) return Fail(ch.status());
      auto rows = privest::RunPrivacySweep(*ch, cfg->solver, points);
      status = rows.ok() ? privest::WriteSweepTables(*rows, exp_args.out)
                         : rows.status();
    }
    if (!status.ok()) return Fail(status);
    return 0;
  }

  auto cfg = Load(channel_args);
  if (!cfg.ok()) return Fail(cfg.status());
  auto ch = privest::BuildRunChannel(*cfg);
  if (!ch.ok()) return Fail(ch.status());
  if (auto s = privest::WriteTextFile(fs::path(channel_args.out) /
                                          "channel.csv",
                                      privest::ChannelCsv(*ch));
      !s.ok()) {
    return Fail(s);
  }
  if (auto s = WritePhi(*ch, channel_args.out); !s.ok()) return Fail(s);
  return 0;
}
