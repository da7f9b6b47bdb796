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

#ifndef KWLAB_ALGEBRA_HPP_
#define KWLAB_ALGEBRA_HPP_

#include <array>
#include <cmath>
#include <stdexcept>

namespace kwlab {

// su(2) element in the basis e_k = -i sigma_k. With <b c> = -1/2 tr(bc)
// the basis is orthonormal and [e_j, e_k] = 2 eps_jkl e_l.
struct LieVector {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr LieVector() = default;
  constexpr LieVector(double x, double y, double z) : c{x, y, z} {}

  constexpr double& operator[](int k) { return c[k]; }
  constexpr double operator[](int k) const { return c[k]; }

  constexpr LieVector& operator+=(const LieVector& o) {
    c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
    return *this;
  }
  constexpr LieVector& operator-=(const LieVector& o) {
    c[0] -= o.c[0]; c[1] -= o.c[1]; c[2] -= o.c[2];
    return *this;
  }
  constexpr LieVector& operator*=(double s) {
    c[0] *= s; c[1] *= s; c[2] *= s;
    return *this;
  }
  friend constexpr LieVector operator+(LieVector a, const LieVector& b) { return a += b; }
  friend constexpr LieVector operator-(LieVector a, const LieVector& b) { return a -= b; }
  friend constexpr LieVector operator-(LieVector a) { return a *= -1.0; }
  friend constexpr LieVector operator*(double s, LieVector a) { return a *= s; }
  friend constexpr LieVector operator*(LieVector a, double s) { return a *= s; }
  friend constexpr bool operator==(const LieVector&, const LieVector&) = default;
};

constexpr double inner(const LieVector& b, const LieVector& c) {
  return b.c[0] * c.c[0] + b.c[1] * c.c[1] + b.c[2] * c.c[2];
}

constexpr double norm2(const LieVector& b) { return inner(b, b); }
inline double norm(const LieVector& b) { return std::sqrt(norm2(b)); }

constexpr LieVector commutator(const LieVector& b, const LieVector& c) {
  return {2.0 * (b.c[1] * c.c[2] - b.c[2] * c.c[1]),
          2.0 * (b.c[2] * c.c[0] - b.c[0] * c.c[2]),
          2.0 * (b.c[0] * c.c[1] - b.c[1] * c.c[0])};
}

inline constexpr int kMaxVdim = 4;

// A point value of V (x) su(2): vdim LieVector components a_c.
struct HiggsValue {
  int vdim = 1;
  std::array<LieVector, kMaxVdim> comp{};

  constexpr HiggsValue() = default;
  explicit HiggsValue(int d) : vdim(d) {
    if (d < 1 || d > kMaxVdim) throw std::invalid_argument("HiggsValue: vdim must be in 1..4");
  }

  constexpr LieVector& operator[](int c) { return comp[c]; }
  constexpr const LieVector& operator[](int c) const { return comp[c]; }

  HiggsValue& operator+=(const HiggsValue& o) {
    check_same(o);
    for (int c = 0; c < vdim; ++c) comp[c] += o.comp[c];
    return *this;
  }
  HiggsValue& operator-=(const HiggsValue& o) {
    check_same(o);
    for (int c = 0; c < vdim; ++c) comp[c] -= o.comp[c];
    return *this;
  }
  HiggsValue& operator*=(double s) {
    for (int c = 0; c < vdim; ++c) comp[c] *= s;
    return *this;
  }
  friend HiggsValue operator+(HiggsValue a, const HiggsValue& b) { return a += b; }
  friend HiggsValue operator-(HiggsValue a, const HiggsValue& b) { return a -= b; }
  friend HiggsValue operator*(double s, HiggsValue a) { return a *= s; }

  void check_same(const HiggsValue& o) const {
    if (o.vdim != vdim) throw std::invalid_argument("HiggsValue: vdim mismatch");
  }
};

inline double norm2(const HiggsValue& v) {
  double s = 0.0;
  for (int c = 0; c < v.vdim; ++c) s += norm2(v.comp[c]);
  return s;
}
inline double norm(const HiggsValue& v) { return std::sqrt(norm2(v)); }

inline double inner(const HiggsValue& a, const HiggsValue& b) {
  a.check_same(b);
  double s = 0.0;
  for (int c = 0; c < a.vdim; ++c) s += inner(a.comp[c], b.comp[c]);
  return s;
}

// sum_{b<c} |[a_b, a_c]|^2
inline double wedge_square(const HiggsValue& v) {
  double s = 0.0;
  for (int b = 0; b < v.vdim; ++b)
    for (int c = b + 1; c < v.vdim; ++c) s += norm2(commutator(v.comp[b], v.comp[c]));
  return s;
}

// a(v) = a_c v_c
inline LieVector contract(const HiggsValue& a, const std::array<double, kMaxVdim>& v) {
  LieVector r;
  for (int c = 0; c < a.vdim; ++c) r += v[c] * a.comp[c];
  return r;
}

using VVector = std::array<double, kMaxVdim>;

}  // namespace kwlab

#endif  // KWLAB_ALGEBRA_HPP_
