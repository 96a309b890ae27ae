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

#include "privest/gaussian.h"

#include <cmath>
#include <numbers>

namespace privest {

namespace {
constexpr double kSaturation = 40.0;
}  // namespace

double GaussianCdf(double t) {
  if (t > kSaturation) return 1.0;
  if (t < -kSaturation) return 0.0;
  return 0.5 * std::erfc(-t / std::numbers::sqrt2);
}

double GaussianIntervalProbability(double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (lo > 0.0) return GaussianCdf(-lo) - GaussianCdf(-hi);
  return GaussianCdf(hi) - GaussianCdf(lo);
}

double GaussianPdf(double t) {
  return std::exp(-0.5 * t * t) * (0.5 * std::numbers::inv_sqrtpi *
                                   std::numbers::sqrt2);
}

}  // namespace privest
