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

// Reference kernels. The AVX2 variants must agree with these to rounding.

#include "kwlab/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace kwlab::simd {
namespace {

double edge_energy(const Vec3View* a, int ncomp, const MatView& T, std::ptrdiff_t s,
                   std::size_t b, std::size_t e) {
  double acc = 0.0;
  for (std::size_t i = b; i < e; ++i) {
    const std::size_t j = i + s;
    double m[9];
    for (int k = 0; k < 9; ++k) m[k] = T.m[k][i];
    for (int c = 0; c < ncomp; ++c) {
      const double ux = a[c].x[j], uy = a[c].y[j], uz = a[c].z[j];
      const double dx = m[0] * ux + m[1] * uy + m[2] * uz - a[c].x[i];
      const double dy = m[3] * ux + m[4] * uy + m[5] * uz - a[c].y[i];
      const double dz = m[6] * ux + m[7] * uy + m[8] * uz - a[c].z[i];
      acc += dx * dx + dy * dy + dz * dz;
    }
  }
  return acc;
}

void edge_gradient(const Vec3View* a, int ncomp, const MatView& T, std::ptrdiff_t s, double k,
                   std::size_t b, std::size_t e, const Vec3Out* out) {
  for (std::size_t i = b; i < e; ++i) {
    const std::size_t jp = i + s, jm = i - s;
    double m[9], t[9];
    for (int q = 0; q < 9; ++q) {
      m[q] = T.m[q][i];
      t[q] = T.m[q][jm];
    }
    for (int c = 0; c < ncomp; ++c) {
      const double px = a[c].x[jp], py = a[c].y[jp], pz = a[c].z[jp];
      const double qx = a[c].x[jm], qy = a[c].y[jm], qz = a[c].z[jm];
      const double fx = m[0] * px + m[1] * py + m[2] * pz;
      const double fy = m[3] * px + m[4] * py + m[5] * pz;
      const double fz = m[6] * px + m[7] * py + m[8] * pz;
      const double bx = t[0] * qx + t[3] * qy + t[6] * qz;
      const double by = t[1] * qx + t[4] * qy + t[7] * qz;
      const double bz = t[2] * qx + t[5] * qy + t[8] * qz;
      out[c].x[i] += k * (2.0 * a[c].x[i] - fx - bx);
      out[c].y[i] += k * (2.0 * a[c].y[i] - fy - by);
      out[c].z[i] += k * (2.0 * a[c].z[i] - fz - bz);
    }
  }
}

double commutator_terms(const Vec3View* a, int ncomp, double k, std::size_t b, std::size_t e,
                        const Vec3Out* out) {
  double acc = 0.0;
  for (std::size_t i = b; i < e; ++i) {
    double v[4][3];
    for (int c = 0; c < ncomp; ++c) {
      v[c][0] = a[c].x[i];
      v[c][1] = a[c].y[i];
      v[c][2] = a[c].z[i];
    }
    double g[4][3] = {};
    for (int p = 0; p < ncomp; ++p)
      for (int c = p + 1; c < ncomp; ++c) {
        double w[3];
        bracket(v[p], v[c], w);
        acc += w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
        // [a_c, [a_p, a_c]] = [a_c, w] for p, and [a_p, [a_c, a_p]] = [w, a_p] for c
        double t[3];
        bracket(v[c], w, t);
        g[p][0] += t[0]; g[p][1] += t[1]; g[p][2] += t[2];
        bracket(w, v[p], t);
        g[c][0] += t[0]; g[c][1] += t[1]; g[c][2] += t[2];
      }
    for (int c = 0; c < ncomp; ++c) {
      out[c].x[i] += k * g[c][0];
      out[c].y[i] += k * g[c][1];
      out[c].z[i] += k * g[c][2];
    }
  }
  return acc;
}

double commutator_delta(const Vec3View* a, const Vec3View* d, int ncomp, std::size_t b,
                        std::size_t e) {
  double acc = 0.0;
  for (std::size_t i = b; i < e; ++i) {
    double v[4][3], w[4][3];
    for (int c = 0; c < ncomp; ++c) {
      v[c][0] = a[c].x[i]; v[c][1] = a[c].y[i]; v[c][2] = a[c].z[i];
      w[c][0] = d[c].x[i]; w[c][1] = d[c].y[i]; w[c][2] = d[c].z[i];
    }
    for (int p = 0; p < ncomp; ++p)
      for (int c = p + 1; c < ncomp; ++c) {
        double P[3], q1[3], q2[3], q3[3];
        bracket(v[p], v[c], P);
        bracket(v[p], w[c], q1);
        bracket(w[p], v[c], q2);
        bracket(w[p], w[c], q3);
        for (int k = 0; k < 3; ++k) {
          const double Q = q1[k] + q2[k] + q3[k];
          acc += 2.0 * P[k] * Q + Q * Q;
        }
      }
  }
  return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void moments(const MomentBatch& B, MomentSums& S) {
  const int vd = B.vdim;
  for (std::size_t i = 0; i < B.count; ++i) {
    const double w = B.w[i];
    double v[4][3];
    for (int c = 0; c < vd; ++c)
      for (int k = 0; k < 3; ++k) v[c][k] = B.a[c][k][i];
    double br[4][4][3] = {};
    for (int p = 0; p < vd; ++p)
      for (int c = p + 1; c < vd; ++c) {
        bracket(v[p], v[c], br[p][c]);
        for (int k = 0; k < 3; ++k) br[c][p][k] = -br[p][c][k];
      }
    for (int c = 0; c < vd; ++c)
      for (int d = c; d < vd; ++d) {
        const double t = v[c][0] * v[d][0] + v[c][1] * v[d][1] + v[c][2] * v[d][2];
        double g = 0.0;
        for (int al = 0; al < B.dim; ++al)
          for (int k = 0; k < 3; ++k) g += B.g[al][c][k][i] * B.g[al][d][k][i];
        double cc = 0.0;
        for (int p = 0; p < vd; ++p)
          cc += br[p][c][0] * br[p][d][0] + br[p][c][1] * br[p][d][1] + br[p][c][2] * br[p][d][2];
        S.T[4 * c + d] += w * t;
        S.G[4 * c + d] += w * g;
        S.C[4 * c + d] += w * cc;
      }
  }
  symmetrize(S, vd);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::scalar, edge_energy, edge_gradient, commutator_terms,
                             commutator_delta, dot,         axpy,        moments};
  return t;
}

}  // namespace kwlab::simd
