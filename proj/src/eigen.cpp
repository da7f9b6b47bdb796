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

#include "kwlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kwlab {

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

namespace {

double off_norm(const SymMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigen(const SymMatrix& in, double rel_tol) {
  const int n = in.n;
  if (n < 1 || n > 4) throw std::invalid_argument("jacobi_eigen: size must be 1..4");
  SymMatrix a = in;
  double V[4][4] = {};
  for (int i = 0; i < n; ++i) V[i][i] = 1.0;
  const double scale = std::max(std::abs(in.trace()), in.frobenius());
  const double target = rel_tol * scale;

  int sweeps = 0;
  for (; sweeps < 100; ++sweeps) {
    const double off = off_norm(a);
    if (off == 0.0 || off < target) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = V[k][p], vkq = V[k][q];
          V[k][p] = c * vkp - s * vkq;
          V[k][q] = s * vkp + c * vkq;
        }
      }
  }

  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.begin() + n, [&](int i, int j) { return a(i, i) < a(j, j); });
  EigenDecomposition e;
  e.n = n;
  e.sweeps = sweeps;
  for (int k = 0; k < n; ++k) {
    const int col = order[k];
    e.values[k] = a(col, col);
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += V[i][col] * V[i][col];
    nrm = std::sqrt(nrm);
    double sign = 1.0;
    for (int i = 0; i < n; ++i)
      if (std::abs(V[i][col]) > 1e-14) {
        sign = V[i][col] > 0 ? 1.0 : -1.0;
        break;
      }
    for (int i = 0; i < n; ++i) e.vectors[k][i] = sign * V[i][col] / nrm;
  }
  return e;
}

}  // namespace kwlab
