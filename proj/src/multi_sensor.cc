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

#include "privest/multi_sensor.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace privest {

namespace {

void Compose(int remaining, int bin, std::vector<int>& current,
             std::vector<std::vector<int>>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (bin == last) {
    current[bin] = remaining;
    out.push_back(current);
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    current[bin] = c;
    Compose(remaining - c, bin + 1, current, out);
  }
}

}  // namespace

std::optional<int> CountAlphabet::IndexOf(std::span<const int> c) const {
  auto it = index.find(std::vector<int>(c.begin(), c.end()));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::string CountAlphabet::Label(int i) const {
  return absl::StrJoin(counts[i], ":");
}

std::int64_t CompositionCount(int sensors, int bins) {
  // binom(M + N - 1, k) built up one factor at a time; each partial product
  // is itself a binomial coefficient, so the division is exact.
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  const int k = bins - 1;
  std::int64_t value = 1;
  for (int t = 1; t <= k; ++t) {
    const std::int64_t factor = sensors + t;
    if (value > kMax / factor) return kMax;
    value = value * factor / t;
  }
  return value;
}

absl::StatusOr<CountAlphabet> EnumerateCounts(int sensors, int bins,
                                              std::int64_t cap) {
  if (sensors < 1 || bins < 2) {
    return absl::InvalidArgumentError("need at least 1 sensor and 2 bins");
  }
  const std::int64_t total = CompositionCount(sensors, bins);
  if (total > cap) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "%d sensors over %d bins give %d count vectors (cap %d); reduce the "
        "sensor or bin count",
        sensors, bins, total, cap));
  }
  CountAlphabet alphabet;
  alphabet.sensors = sensors;
  alphabet.bins = bins;
  alphabet.counts.reserve(total);
  std::vector<int> current(bins, 0);
  Compose(sensors, 0, current, alphabet.counts);
  for (int i = 0; i < alphabet.size(); ++i) {
    alphabet.index.emplace(alphabet.counts[i], i);
  }
  return alphabet;
}

absl::StatusOr<Channel> CountChannel(const Channel& base,
                                     const CountAlphabet& alphabet) {
  if (alphabet.bins != base.symbols()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "alphabet has %d bins, base channel has %d", alphabet.bins,
        base.symbols()));
  }
  const int rows = static_cast<int>(base.given_xy.rows());
  const Eigen::MatrixXd log_base = base.given_xy.array().log();
  const double log_m_factorial = std::lgamma(alphabet.sensors + 1.0);
  Eigen::MatrixXd given_xy(rows, alphabet.size());
  for (int s = 0; s < alphabet.size(); ++s) {
    const std::vector<int>& c = alphabet.counts[s];
    double log_coefficient = log_m_factorial;
    for (int v : c) log_coefficient -= std::lgamma(v + 1.0);
    for (int r = 0; r < rows; ++r) {
      double log_p = log_coefficient;
      for (int l = 0; l < alphabet.bins; ++l) {
        if (c[l] > 0) log_p += c[l] * log_base(r, l);
      }
      given_xy(r, s) = std::exp(log_p);
    }
  }
  std::vector<std::string> labels;
  labels.reserve(alphabet.size());
  for (int s = 0; s < alphabet.size(); ++s) labels.push_back(alphabet.Label(s));
  return MakeChannel(base.prior, std::move(given_xy), std::move(labels));
}

}  // namespace privest
