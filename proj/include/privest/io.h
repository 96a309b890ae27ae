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

// Text serialization. Numbers are written with %.17g so that a value read
// back is bit-identical and so that two runs with the same inputs produce
// byte-identical files.

#ifndef PRIVEST_IO_H_
#define PRIVEST_IO_H_

#include <filesystem>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "privest/channel.h"
#include "privest/estimator.h"
#include "privest/perfect_privacy.h"
#include "privest/privacy_solver.h"

namespace privest {

std::string FormatDouble(double v);

absl::Status WriteTextFile(const std::filesystem::path& path,
                           absl::string_view contents);
absl::StatusOr<std::string> ReadTextFile(const std::filesystem::path& path);

// A header plus rows of preformatted cells.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void AddRow(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string ToCsv() const;
  // Whitespace-separated with a '#' header line, for gnuplot.
  std::string ToDat() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes dir/<stem>.csv and dir/<stem>.dat, and dir/<stem>.meta.json when
// `metadata` is non-empty. Creates dir if needed.
absl::Status WriteTable(const Table& table, const std::filesystem::path& dir,
                        absl::string_view stem, absl::string_view metadata);

// One row per (x_j, y_i) with the K observation probabilities.
std::string ChannelCsv(const Channel& ch);

std::string MatrixCsv(const Eigen::MatrixXd& mat,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels,
                      absl::string_view corner);

// A "# {json}" line naming the outputs and observation symbols, then m rows
// of K comma-separated probabilities.
std::string EstimatorCsv(const Estimator& est,
                         const std::vector<std::string>& symbol_labels);
absl::StatusOr<Estimator> ParseEstimatorCsv(absl::string_view text);

std::string TraceCsv(const std::vector<SolverTraceRow>& trace);

// Basis membership and reduced cost per LP variable (P_il).
std::string LpCertificateCsv(const LpCertificate& cert,
                             const Estimator& est,
                             const std::vector<std::string>& symbol_labels);

nlohmann::ordered_json ReportJson(const PrivacyReport& report);
// key=value lines in a fixed order.
std::string ReportText(const PrivacyReport& report);

}  // namespace privest

#endif  // PRIVEST_IO_H_
