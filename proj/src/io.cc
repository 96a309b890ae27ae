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

#include "privest/io.h"

#include <fstream>
#include <sstream>
#include <system_error>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace privest {

std::string FormatDouble(double v) { return absl::StrFormat("%.17g", v); }

absl::Status WriteTextFile(const std::filesystem::path& path,
                           absl::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      return absl::InternalError(absl::StrCat("cannot create directory ",
                                              path.parent_path().string(),
                                              ": ", ec.message()));
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::InternalError(absl::StrCat("cannot open ", path.string()));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    return absl::InternalError(absl::StrCat("write failed: ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string Table::ToCsv() const {
  std::string out = absl::StrCat(absl::StrJoin(header_, ","), "\n");
  for (const auto& row : rows_) {
    absl::StrAppend(&out, absl::StrJoin(row, ","), "\n");
  }
  return out;
}

std::string Table::ToDat() const {
  std::string out = absl::StrCat("# ", absl::StrJoin(header_, " "), "\n");
  for (const auto& row : rows_) {
    absl::StrAppend(&out, absl::StrJoin(row, " "), "\n");
  }
  return out;
}

absl::Status WriteTable(const Table& table, const std::filesystem::path& dir,
                        absl::string_view stem, absl::string_view metadata) {
  const std::string base(stem);
  if (auto s = WriteTextFile(dir / (base + ".csv"), table.ToCsv()); !s.ok()) {
    return s;
  }
  if (auto s = WriteTextFile(dir / (base + ".dat"), table.ToDat()); !s.ok()) {
    return s;
  }
  if (metadata.empty()) return absl::OkStatus();
  return WriteTextFile(dir / (base + ".meta.json"), metadata);
}

std::string ChannelCsv(const Channel& ch) {
  const std::vector<std::string> xs = ch.prior.XLabels();
  const std::vector<std::string> ys = ch.prior.YLabels();
  std::string out = absl::StrCat("x,y,prior,",
                                 absl::StrJoin(ch.symbol_labels, ","), "\n");
  for (int j = 0; j < ch.n(); ++j) {
    for (int i = 0; i < ch.m(); ++i) {
      absl::StrAppend(&out, xs[j], ",", ys[i], ",",
                      FormatDouble(ch.prior.pmf(j, i)));
      const auto row = ch.given_xy.row(ch.Row(j, i));
      for (Eigen::Index l = 0; l < row.size(); ++l) {
        absl::StrAppend(&out, ",", FormatDouble(row(l)));
      }
      absl::StrAppend(&out, "\n");
    }
  }
  return out;
}

std::string MatrixCsv(const Eigen::MatrixXd& mat,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels,
                      absl::string_view corner) {
  std::string out(corner);
  for (Eigen::Index c = 0; c < mat.cols(); ++c) {
    absl::StrAppend(&out, ",",
                    c < static_cast<Eigen::Index>(col_labels.size())
                        ? col_labels[c]
                        : absl::StrCat(c));
  }
  absl::StrAppend(&out, "\n");
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    absl::StrAppend(&out, r < static_cast<Eigen::Index>(row_labels.size())
                              ? row_labels[r]
                              : absl::StrCat(r));
    for (Eigen::Index c = 0; c < mat.cols(); ++c) {
      absl::StrAppend(&out, ",", FormatDouble(mat(r, c)));
    }
    absl::StrAppend(&out, "\n");
  }
  return out;
}

std::string EstimatorCsv(const Estimator& est,
                         const std::vector<std::string>& symbol_labels) {
  nlohmann::ordered_json header;
  header["format"] = "privest-estimator";
  header["outputs"] = est.output_labels;
  header["symbols"] = symbol_labels;
  std::string out = absl::StrCat("# ", header.dump(), "\n");
  for (Eigen::Index i = 0; i < est.probs.rows(); ++i) {
    std::vector<std::string> cells;
    for (Eigen::Index l = 0; l < est.probs.cols(); ++l) {
      cells.push_back(FormatDouble(est.probs(i, l)));
    }
    absl::StrAppend(&out, absl::StrJoin(cells, ","), "\n");
  }
  return out;
}

absl::StatusOr<Estimator> ParseEstimatorCsv(absl::string_view text) {
  std::vector<absl::string_view> lines =
      absl::StrSplit(text, '\n', absl::SkipWhitespace());
  if (lines.empty() || !absl::ConsumePrefix(&lines[0], "# ")) {
    return absl::InvalidArgumentError("missing estimator header line");
  }
  nlohmann::json header = nlohmann::json::parse(lines[0], nullptr, false);
  if (header.is_discarded() || !header.contains("outputs") ||
      !header["outputs"].is_array()) {
    return absl::InvalidArgumentError("malformed estimator header");
  }
  Estimator est;
  for (const auto& label : header["outputs"]) {
    if (!label.is_string()) {
      return absl::InvalidArgumentError("output labels must be strings");
    }
    est.output_labels.push_back(label.get<std::string>());
  }
  const int m = static_cast<int>(est.output_labels.size());
  if (static_cast<int>(lines.size()) - 1 != m) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "expected %d estimator rows, found %d", m, lines.size() - 1));
  }
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < m; ++i) {
    std::vector<double> row;
    for (absl::string_view cell : absl::StrSplit(lines[i + 1], ',')) {
      double v;
      if (!absl::SimpleAtod(absl::StripAsciiWhitespace(cell), &v)) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad number '", cell, "' in row ", i));
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      return absl::InvalidArgumentError("ragged estimator rows");
    }
    rows.push_back(std::move(row));
  }
  const int k = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  est.probs.resize(m, k);
  for (int i = 0; i < m; ++i) {
    for (int l = 0; l < k; ++l) est.probs(i, l) = rows[i][l];
  }
  if (auto s = ValidateEstimator(est); !s.ok()) return s;
  return est;
}

std::string TraceCsv(const std::vector<SolverTraceRow>& trace) {
  std::string out = "iteration,objective,cond_entropy_bits,mu,residual\n";
  for (const SolverTraceRow& r : trace) {
    absl::StrAppend(&out, r.iteration, ",", FormatDouble(r.objective), ",",
                    FormatDouble(r.cond_entropy_bits), ",",
                    FormatDouble(r.mu), ",", FormatDouble(r.residual), "\n");
  }
  return out;
}

std::string LpCertificateCsv(const LpCertificate& cert, const Estimator& est,
                             const std::vector<std::string>& symbol_labels) {
  const int m = static_cast<int>(est.probs.rows());
  std::vector<bool> in_basis(est.probs.size(), false);
  for (int v : cert.basis) {
    if (v >= 0 && v < static_cast<int>(in_basis.size())) in_basis[v] = true;
  }
  std::string out = absl::StrCat("# objective=", FormatDouble(cert.objective),
                                 " pivots=", cert.pivots,
                                 " unique=", cert.unique ? 1 : 0,
                                 " redundant_rows=",
                                 absl::StrJoin(cert.redundant_rows, ";"), "\n");
  absl::StrAppend(&out, "output,symbol,value,basic,reduced_cost\n");
  for (Eigen::Index l = 0; l < est.probs.cols(); ++l) {
    for (int i = 0; i < m; ++i) {
      const int v = static_cast<int>(l) * m + i;
      const double rc =
          v < cert.reduced_costs.size() ? cert.reduced_costs(v) : 0.0;
      absl::StrAppend(&out, est.output_labels[i], ",", symbol_labels[l], ",",
                      FormatDouble(est.probs(i, l)), ",",
                      in_basis[v] ? 1 : 0, ",", FormatDouble(rc), "\n");
    }
  }
  return out;
}

nlohmann::ordered_json ReportJson(const PrivacyReport& report) {
  nlohmann::ordered_json j;
  j["prior_entropy_bits"] = report.prior_entropy_bits;
  j["cond_entropy_bits"] = report.cond_entropy_bits;
  j["mutual_info_bits"] = report.mutual_info_bits;
  j["fano_bound"] = report.fano_bound;
  j["error_prob"] = report.error_prob;
  j["pp_residual"] = report.pp_residual;
  return j;
}

std::string ReportText(const PrivacyReport& report) {
  return absl::StrCat(
      "prior_entropy_bits=", FormatDouble(report.prior_entropy_bits), "\n",
      "cond_entropy_bits=", FormatDouble(report.cond_entropy_bits), "\n",
      "mutual_info_bits=", FormatDouble(report.mutual_info_bits), "\n",
      "fano_bound=", FormatDouble(report.fano_bound), "\n",
      "error_prob=", FormatDouble(report.error_prob), "\n",
      "pp_residual=", FormatDouble(report.pp_residual), "\n");
}

}  // namespace privest
