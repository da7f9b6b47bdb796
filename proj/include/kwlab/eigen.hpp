// Copyright 2026 The kwlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KWLAB_EIGEN_HPP_
#define KWLAB_EIGEN_HPP_

#include <array>

namespace kwlab {

// Small symmetric matrix (n <= 4), row-major in a fixed 4x4 block.
struct SymMatrix {
  int n = 0;
  std::array<double, 16> m{};

  SymMatrix() = default;
  explicit SymMatrix(int size) : n(size) {}
  double& operator()(int i, int j) { return m[4 * i + j]; }
  double operator()(int i, int j) const { return m[4 * i + j]; }
  double trace() const;
  double frobenius() const;
};

struct EigenDecomposition {
  int n = 0;
  std::array<double, 4> values{};                  // ascending
  std::array<std::array<double, 4>, 4> vectors{};  // vectors[k] pairs with values[k]
  int sweeps = 0;
};

// Cyclic Jacobi until the off-diagonal Frobenius norm drops below
// rel_tol * max(|trace|, frobenius) (or exactly zero). Eigenvectors are
// normalized with their first nonzero coefficient positive.
EigenDecomposition jacobi_eigen(const SymMatrix& a, double rel_tol = 1e-13);

}  // namespace kwlab

#endif  // KWLAB_EIGEN_HPP_
