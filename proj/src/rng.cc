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

#include "privest/rng.h"

#include <cmath>
#include <numbers>

namespace privest {

namespace {
constexpr double kTwoToMinus53 = 1.0 / 9007199254740992.0;
}  // namespace

double UniformDouble(SplitMix64& rng) {
  return static_cast<double>(rng() >> 11) * kTwoToMinus53;
}

double StandardNormal(SplitMix64& rng) {
  // u1 in (0, 1] keeps the logarithm finite.
  const double u1 = static_cast<double>((rng() >> 11) + 1) * kTwoToMinus53;
  const double u2 = UniformDouble(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace privest
