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

// AVX2/FMA variants, four nodes per lane group. Tails fall back to the
// scalar reference on the remaining range.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace kwlab::simd {
namespace {

using V = __m256d;

inline V ld(const double* p) { return _mm256_loadu_pd(p); }
inline double hsum(V v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

struct V3 {
  V x, y, z;
};

inline V3 load3(const Vec3View& a, std::size_t i) { return {ld(a.x + i), ld(a.y + i), ld(a.z + i)}; }

inline V3 bracket(const V3& u, const V3& v) {
  const V two = _mm256_set1_pd(2.0);
  return {_mm256_mul_pd(two, _mm256_fmsub_pd(u.y, v.z, _mm256_mul_pd(u.z, v.y))),
          _mm256_mul_pd(two, _mm256_fmsub_pd(u.z, v.x, _mm256_mul_pd(u.x, v.z))),
          _mm256_mul_pd(two, _mm256_fmsub_pd(u.x, v.y, _mm256_mul_pd(u.y, v.x)))};
}

inline V dot3(const V3& u, const V3& v) {
  return _mm256_fmadd_pd(u.x, v.x, _mm256_fmadd_pd(u.y, v.y, _mm256_mul_pd(u.z, v.z)));
}

inline V3 matvec(const V* m, const V3& u) {
  return {_mm256_fmadd_pd(m[0], u.x, _mm256_fmadd_pd(m[1], u.y, _mm256_mul_pd(m[2], u.z))),
          _mm256_fmadd_pd(m[3], u.x, _mm256_fmadd_pd(m[4], u.y, _mm256_mul_pd(m[5], u.z))),
          _mm256_fmadd_pd(m[6], u.x, _mm256_fmadd_pd(m[7], u.y, _mm256_mul_pd(m[8], u.z)))};
}

inline V3 matvec_t(const V* m, const V3& u) {
  return {_mm256_fmadd_pd(m[0], u.x, _mm256_fmadd_pd(m[3], u.y, _mm256_mul_pd(m[6], u.z))),
          _mm256_fmadd_pd(m[1], u.x, _mm256_fmadd_pd(m[4], u.y, _mm256_mul_pd(m[7], u.z))),
          _mm256_fmadd_pd(m[2], u.x, _mm256_fmadd_pd(m[5], u.y, _mm256_mul_pd(m[8], u.z)))};
}

double edge_energy(const Vec3View* a, int ncomp, const MatView& T, std::ptrdiff_t s,
                   std::size_t b, std::size_t e) {
  V acc = _mm256_setzero_pd();
  std::size_t i = b;
  for (; i + 4 <= e; i += 4) {
    V m[9];
    for (int q = 0; q < 9; ++q) m[q] = ld(T.m[q] + i);
    for (int c = 0; c < ncomp; ++c) {
      const V3 t = matvec(m, load3(a[c], i + s));
      const V3 u = load3(a[c], i);
      const V dx = _mm256_sub_pd(t.x, u.x), dy = _mm256_sub_pd(t.y, u.y),
                dz = _mm256_sub_pd(t.z, u.z);
      acc = _mm256_fmadd_pd(dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_fmadd_pd(dz, dz, acc)));
    }
  }
  return hsum(acc) + scalar_table().edge_energy(a, ncomp, T, s, i, e);
}

void edge_gradient(const Vec3View* a, int ncomp, const MatView& T, std::ptrdiff_t s, double k,
                   std::size_t b, std::size_t e, const Vec3Out* out) {
  const V kk = _mm256_set1_pd(k), two = _mm256_set1_pd(2.0);
  std::size_t i = b;
  for (; i + 4 <= e; i += 4) {
    V m[9], t[9];
    for (int q = 0; q < 9; ++q) {
      m[q] = ld(T.m[q] + i);
      t[q] = ld(T.m[q] + i - s);
    }
    for (int c = 0; c < ncomp; ++c) {
      const V3 f = matvec(m, load3(a[c], i + s));
      const V3 g = matvec_t(t, load3(a[c], i - s));
      const V3 u = load3(a[c], i);
      const V rx = _mm256_sub_pd(_mm256_fmsub_pd(two, u.x, f.x), g.x);
      const V ry = _mm256_sub_pd(_mm256_fmsub_pd(two, u.y, f.y), g.y);
      const V rz = _mm256_sub_pd(_mm256_fmsub_pd(two, u.z, f.z), g.z);
      _mm256_storeu_pd(out[c].x + i, _mm256_fmadd_pd(kk, rx, ld(out[c].x + i)));
      _mm256_storeu_pd(out[c].y + i, _mm256_fmadd_pd(kk, ry, ld(out[c].y + i)));
      _mm256_storeu_pd(out[c].z + i, _mm256_fmadd_pd(kk, rz, ld(out[c].z + i)));
    }
  }
  scalar_table().edge_gradient(a, ncomp, T, s, k, i, e, out);
}

double commutator_terms(const Vec3View* a, int ncomp, double k, std::size_t b, std::size_t e,
                        const Vec3Out* out) {
  const V kk = _mm256_set1_pd(k), zero = _mm256_setzero_pd();
  V acc = zero;
  std::size_t i = b;
  for (; i + 4 <= e; i += 4) {
    V3 v[4], g[4];
    for (int c = 0; c < ncomp; ++c) {
      v[c] = load3(a[c], i);
      g[c] = {zero, zero, zero};
    }
    for (int p = 0; p < ncomp; ++p)
      for (int c = p + 1; c < ncomp; ++c) {
        const V3 w = bracket(v[p], v[c]);
        acc = _mm256_add_pd(acc, dot3(w, w));
        const V3 t1 = bracket(v[c], w);
        const V3 t2 = bracket(w, v[p]);
        g[p] = {_mm256_add_pd(g[p].x, t1.x), _mm256_add_pd(g[p].y, t1.y),
                _mm256_add_pd(g[p].z, t1.z)};
        g[c] = {_mm256_add_pd(g[c].x, t2.x), _mm256_add_pd(g[c].y, t2.y),
                _mm256_add_pd(g[c].z, t2.z)};
      }
    for (int c = 0; c < ncomp; ++c) {
      _mm256_storeu_pd(out[c].x + i, _mm256_fmadd_pd(kk, g[c].x, ld(out[c].x + i)));
      _mm256_storeu_pd(out[c].y + i, _mm256_fmadd_pd(kk, g[c].y, ld(out[c].y + i)));
      _mm256_storeu_pd(out[c].z + i, _mm256_fmadd_pd(kk, g[c].z, ld(out[c].z + i)));
    }
  }
  return hsum(acc) + scalar_table().commutator_terms(a, ncomp, k, i, e, out);
}

double commutator_delta(const Vec3View* a, const Vec3View* d, int ncomp, std::size_t b,
                        std::size_t e) {
  const V two = _mm256_set1_pd(2.0);
  V acc = _mm256_setzero_pd();
  std::size_t i = b;
  for (; i + 4 <= e; i += 4) {
    V3 v[4], w[4];
    for (int c = 0; c < ncomp; ++c) {
      v[c] = load3(a[c], i);
      w[c] = load3(d[c], i);
    }
    for (int p = 0; p < ncomp; ++p)
      for (int c = p + 1; c < ncomp; ++c) {
        const V3 P = bracket(v[p], v[c]);
        const V3 q1 = bracket(v[p], w[c]), q2 = bracket(w[p], v[c]), q3 = bracket(w[p], w[c]);
        const V3 Q = {_mm256_add_pd(_mm256_add_pd(q1.x, q2.x), q3.x),
                      _mm256_add_pd(_mm256_add_pd(q1.y, q2.y), q3.y),
                      _mm256_add_pd(_mm256_add_pd(q1.z, q2.z), q3.z)};
        acc = _mm256_add_pd(acc, _mm256_fmadd_pd(two, dot3(P, Q), dot3(Q, Q)));
      }
  }
  return hsum(acc) + scalar_table().commutator_delta(a, d, ncomp, i, e);
}

double dot(const double* x, const double* y, std::size_t n) {
  V acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(ld(x + i), ld(y + i), acc0);
    acc1 = _mm256_fmadd_pd(ld(x + i + 4), ld(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(ld(x + i), ld(y + i), acc0);
  return hsum(_mm256_add_pd(acc0, acc1)) + scalar_table().dot(x + i, y + i, n - i);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const V al = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_fmadd_pd(al, ld(x + i), ld(y + i)));
  scalar_table().axpy(alpha, x + i, y + i, n - i);
}

void moments(const MomentBatch& B, MomentSums& S) {
  const int vd = B.vdim;
  const V zero = _mm256_setzero_pd();
  V T[4][4], G[4][4], C[4][4];
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) T[c][d] = G[c][d] = C[c][d] = zero;
  std::size_t i = 0;
  for (; i + 4 <= B.count; i += 4) {
    const V w = ld(B.w + i);
    V3 v[4];
    for (int c = 0; c < vd; ++c) v[c] = {ld(B.a[c][0] + i), ld(B.a[c][1] + i), ld(B.a[c][2] + i)};
    V3 br[4][4];
    for (int p = 0; p < vd; ++p) {
      br[p][p] = {zero, zero, zero};
      for (int c = p + 1; c < vd; ++c) {
        br[p][c] = bracket(v[p], v[c]);
        br[c][p] = {_mm256_sub_pd(zero, br[p][c].x), _mm256_sub_pd(zero, br[p][c].y),
                    _mm256_sub_pd(zero, br[p][c].z)};
      }
    }
    for (int c = 0; c < vd; ++c)
      for (int d = c; d < vd; ++d) {
        T[c][d] = _mm256_fmadd_pd(w, dot3(v[c], v[d]), T[c][d]);
        V g = zero;
        for (int al = 0; al < B.dim; ++al)
          for (int k = 0; k < 3; ++k)
            g = _mm256_fmadd_pd(ld(B.g[al][c][k] + i), ld(B.g[al][d][k] + i), g);
        G[c][d] = _mm256_fmadd_pd(w, g, G[c][d]);
        V cc = zero;
        for (int p = 0; p < vd; ++p) cc = _mm256_add_pd(cc, dot3(br[p][c], br[p][d]));
        C[c][d] = _mm256_fmadd_pd(w, cc, C[c][d]);
      }
  }
  for (int c = 0; c < vd; ++c)
    for (int d = c; d < vd; ++d) {
      S.T[4 * c + d] += hsum(T[c][d]);
      S.G[4 * c + d] += hsum(G[c][d]);
      S.C[4 * c + d] += hsum(C[c][d]);
    }
  if (i < B.count) {
    MomentBatch tail = B;
    tail.count = B.count - i;
    tail.w = B.w + i;
    for (int c = 0; c < vd; ++c)
      for (int k = 0; k < 3; ++k) {
        tail.a[c][k] = B.a[c][k] + i;
        for (int al = 0; al < B.dim; ++al) tail.g[al][c][k] = B.g[al][c][k] + i;
      }
    scalar_table().moments(tail, S);
  }
  symmetrize(S, vd);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{Isa::avx2, edge_energy, edge_gradient, commutator_terms,
                             commutator_delta, dot,       axpy,        moments};
  return t;
}

}  // namespace kwlab::simd
