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

#ifndef PRIVEST_GAUSSIAN_H_
#define PRIVEST_GAUSSIAN_H_

namespace privest {

// Standard normal CDF. Evaluated as erfc(-t / sqrt(2)) / 2 with the C library
// erfc, which keeps full relative precision in both tails (absolute error
// well under 1e-15 everywhere). Saturates to exactly 0 or 1 for |t| > 40.
double GaussianCdf(double t);

// P(lo < T <= hi) for T ~ N(0, 1). Uses the upper tail when both ends are
// positive so that probabilities of far-right intervals do not cancel.
double GaussianIntervalProbability(double lo, double hi);

// Standard normal density.
double GaussianPdf(double t);

}  // namespace privest

#endif  // PRIVEST_GAUSSIAN_H_
