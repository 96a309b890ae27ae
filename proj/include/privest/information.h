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

#ifndef PRIVEST_INFORMATION_H_
#define PRIVEST_INFORMATION_H_

#include <cmath>

#include "Eigen/Core"

namespace privest {

// Entries below this mass are treated as exact zeros (0 log 0 = 0).
inline constexpr double kNegligibleMass = 1e-15;

// Shannon entropy in bits of a pmf expression.
template <typename Derived>
typename Derived::Scalar EntropyBits(const Eigen::MatrixBase<Derived>& pmf) {
  using Scalar = typename Derived::Scalar;
  using std::log2;
  Scalar h(0);
  for (Eigen::Index k = 0; k < pmf.size(); ++k) {
    const Scalar p = pmf(k);
    if (p > Scalar(kNegligibleMass)) h -= p * log2(p);
  }
  return h;
}

// D(p || q) in bits. Terms with p below kNegligibleMass are dropped.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar KlDivergenceBits(
    const Eigen::MatrixBase<DerivedP>& p,
    const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  using std::log2;
  Scalar d(0);
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) > Scalar(kNegligibleMass)) d += p(k) * log2(p(k) / q(k));
  }
  // Rounding can leave a tiny negative sum for p == q.
  return d > Scalar(0) ? d : Scalar(0);
}

}  // namespace privest

#endif  // PRIVEST_INFORMATION_H_
