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

#ifndef PRIVEST_MULTI_SENSOR_H_
#define PRIVEST_MULTI_SENSOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "privest/channel.h"

namespace privest {

inline constexpr std::int64_t kDefaultCountCap = 200000;

// All vectors of N nonnegative bin counts summing to M, ordered
// lexicographically descending: (M, 0, ..., 0) first, (0, ..., 0, M) last.
struct CountAlphabet {
  int sensors = 0;
  int bins = 0;
  std::vector<std::vector<int>> counts;

  int size() const { return static_cast<int>(counts.size()); }
  std::optional<int> IndexOf(std::span<const int> c) const;
  // "2:0:1:7" style label.
  std::string Label(int index) const;

  std::map<std::vector<int>, int> index;
};

// binom(M + N - 1, N - 1), saturating at INT64_MAX.
std::int64_t CompositionCount(int sensors, int bins);

absl::StatusOr<CountAlphabet> EnumerateCounts(
    int sensors, int bins, std::int64_t cap = kDefaultCountCap);

// Channel over count vectors for M conditionally independent sensors that
// each report a bin of `base`. Given (x_j, y_i) the counts are multinomial,
// P(C = c | x_j, y_i) = M! / prod(c_l!) prod_l P(l | x_j, y_i)^c_l, evaluated
// in log space. X and Y are shared by all sensors, so the per-Y and per-X
// tables marginalize the multinomial rows over the prior, never per sensor.
absl::StatusOr<Channel> CountChannel(const Channel& base,
                                     const CountAlphabet& alphabet);

}  // namespace privest

#endif  // PRIVEST_MULTI_SENSOR_H_
