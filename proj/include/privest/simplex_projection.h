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

#ifndef PRIVEST_SIMPLEX_PROJECTION_H_
#define PRIVEST_SIMPLEX_PROJECTION_H_

#include <algorithm>
#include <functional>
#include <vector>

#include "Eigen/Core"

namespace privest {

// Euclidean projection of v onto {p : p >= 0, sum(p) = 1} by the sort and
// threshold method: p = max(v - theta, 0) where theta is set by the largest
// prefix of the sorted entries that stays positive.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> ProjectOntoSimplex(
    const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> u(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) u[k] = v(k);
  std::sort(u.begin(), u.end(), std::greater<Scalar>());
  Scalar prefix(0);
  Scalar theta(0);
  for (size_t k = 0; k < u.size(); ++k) {
    prefix += u[k];
    const Scalar candidate = (prefix - Scalar(1)) / Scalar(k + 1);
    if (u[k] - candidate > Scalar(0)) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(Scalar(0)).matrix();
}

// Projects every column of p onto the probability simplex.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
ProjectSimplexColumns(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(p.rows(), p.cols());
  for (Eigen::Index l = 0; l < p.cols(); ++l) {
    out.col(l) = ProjectOntoSimplex(p.col(l));
  }
  return out;
}

}  // namespace privest

#endif  // PRIVEST_SIMPLEX_PROJECTION_H_
