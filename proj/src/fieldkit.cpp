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

#include "kwlab/fieldkit.hpp"

#include <cmath>
#include <stdexcept>

namespace kwlab {

TwoForm& TwoForm::operator+=(const TwoForm& o) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) f[a][b] += o.f[a][b];
  return *this;
}

TwoForm& TwoForm::operator-=(const TwoForm& o) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) f[a][b] -= o.f[a][b];
  return *this;
}

TwoForm& TwoForm::operator*=(double s) {
  for (auto& row : f)
    for (auto& v : row) v *= s;
  return *this;
}

double max_norm(const TwoForm& w) {
  double m = 0.0;
  for (int a = 0; a < w.dim; ++a)
    for (int b = a + 1; b < w.dim; ++b) m = std::max(m, norm(w.f[a][b]));
  return m;
}

namespace {

void check_dim(int dim) {
  if (dim != 3 && dim != 4) throw std::invalid_argument("dimension must be 3 or 4");
}

constexpr double kD1[4] = {-1.0 / 12.0, 8.0 / 12.0, -8.0 / 12.0, 1.0 / 12.0};  // +2h,+h,-h,-2h
constexpr double kD2[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0};

}  // namespace

double fd_step(const Point& x, int dim, double step_scale) {
  double r2 = 0.0;
  for (int i = 0; i < dim; ++i) r2 += x[i] * x[i];
  return step_scale * (1.0 + std::sqrt(r2));
}

// ---------------------------------------------------------------- connection

GaugeConnection GaugeConnection::product(int dim) {
  check_dim(dim);
  GaugeConnection g;
  g.dim_ = dim;
  g.product_ = true;
  return g;
}

GaugeConnection GaugeConnection::analytic(int dim, ValueFn value, JetFn jet) {
  check_dim(dim);
  GaugeConnection g;
  g.dim_ = dim;
  g.product_ = false;
  g.mode_ = DerivativeMode::analytic;
  g.value_ = std::move(value);
  g.jet_ = std::move(jet);
  return g;
}

GaugeConnection GaugeConnection::numeric(int dim, ValueFn value, double step_scale) {
  check_dim(dim);
  GaugeConnection g;
  g.dim_ = dim;
  g.product_ = false;
  g.mode_ = DerivativeMode::numeric;
  g.step_scale_ = step_scale;
  g.value_ = std::move(value);
  return g;
}

GaugeConnection GaugeConnection::as_numeric(double step_scale) const {
  if (product_) return *this;
  return numeric(dim_, value_, step_scale);
}

std::array<LieVector, 4> GaugeConnection::operator()(const Point& x) const {
  if (product_) return {};
  return value_(x);
}

ConnectionJet GaugeConnection::jet(const Point& x) const {
  ConnectionJet j;
  j.dim = dim_;
  if (product_) return j;
  if (mode_ == DerivativeMode::analytic) {
    j = jet_(x);
    j.dim = dim_;
    return j;
  }
  j.A = value_(x);
  const double h = fd_step(x, dim_, step_scale_);
  const double off[4] = {2 * h, h, -h, -2 * h};
  for (int b = 0; b < dim_; ++b) {
    Point p = x;
    for (int s = 0; s < 4; ++s) {
      p[b] = x[b] + off[s];
      auto v = value_(p);
      for (int a = 0; a < dim_; ++a) j.dA[b][a] += (kD1[s] / h) * v[a];
    }
  }
  return j;
}

// ---------------------------------------------------------------- higgs field

HiggsField HiggsField::zero(int dim, int vdim) {
  check_dim(dim);
  return analytic(
      dim, vdim, [vdim](const Point&) { return HiggsValue(vdim); },
      [vdim](const Point&) {
        HiggsJet j;
        j.value = HiggsValue(vdim);
        j.grad.fill(HiggsValue(vdim));
        j.laplacian = HiggsValue(vdim);
        return j;
      });
}

HiggsField HiggsField::analytic(int dim, int vdim, ValueFn value, JetFn jet) {
  check_dim(dim);
  HiggsField f;
  f.dim_ = dim;
  f.vdim_ = HiggsValue(vdim).vdim;
  f.mode_ = DerivativeMode::analytic;
  f.value_ = std::move(value);
  f.jet_ = std::move(jet);
  return f;
}

HiggsField HiggsField::numeric(int dim, int vdim, ValueFn value, double step_scale) {
  check_dim(dim);
  HiggsField f;
  f.dim_ = dim;
  f.vdim_ = HiggsValue(vdim).vdim;
  f.mode_ = DerivativeMode::numeric;
  f.step_scale_ = step_scale;
  f.value_ = std::move(value);
  return f;
}

HiggsField HiggsField::as_numeric(double step_scale) const {
  return numeric(dim_, vdim_, value_, step_scale);
}

HiggsValue HiggsField::operator()(const Point& x) const { return value_(x); }

HiggsJet HiggsField::jet(const Point& x) const {
  if (mode_ == DerivativeMode::analytic) return jet_(x);
  HiggsJet j;
  j.value = value_(x);
  j.grad.fill(HiggsValue(vdim_));
  j.laplacian = HiggsValue(vdim_);
  const double h = fd_step(x, dim_, step_scale_);
  for (int b = 0; b < dim_; ++b) {
    Point p = x;
    p[b] = x[b] + 2 * h; const HiggsValue f2 = value_(p);
    p[b] = x[b] + h;     const HiggsValue f1 = value_(p);
    p[b] = x[b] - h;     const HiggsValue m1 = value_(p);
    p[b] = x[b] - 2 * h; const HiggsValue m2 = value_(p);
    j.grad[b] = (kD1[0] / h) * f2 + (kD1[1] / h) * f1 + (kD1[2] / h) * m1 + (kD1[3] / h) * m2;
    const double h2 = h * h;
    j.laplacian += (kD2[0] / h2) * f2 + (kD2[1] / h2) * f1 + (kD2[2] / h2) * j.value +
                   (kD2[3] / h2) * m1 + (kD2[4] / h2) * m2;
  }
  return j;
}

// ---------------------------------------------------------------- calculus

std::array<HiggsValue, 4> covariant_gradient(const HiggsJet& a, const ConnectionJet& A) {
  std::array<HiggsValue, 4> g;
  const int vdim = a.value.vdim;
  g.fill(HiggsValue(vdim));
  for (int al = 0; al < A.dim; ++al) {
    g[al] = a.grad[al];
    for (int c = 0; c < vdim; ++c) g[al][c] += commutator(A.A[al], a.value[c]);
  }
  return g;
}

HiggsValue covariant_derivative(const HiggsField& a, const GaugeConnection& A, const Point& x,
                                int alpha) {
  if (alpha < 0 || alpha >= a.dim()) throw std::invalid_argument("direction out of range");
  return covariant_gradient(a.jet(x), A.jet(x))[alpha];
}

TwoForm curvature(const ConnectionJet& A) {
  TwoForm F(A.dim);
  for (int a = 0; a < A.dim; ++a)
    for (int b = a + 1; b < A.dim; ++b)
      F.set(a, b, A.dA[a][b] - A.dA[b][a] + commutator(A.A[a], A.A[b]));
  return F;
}

TwoForm curvature(const GaugeConnection& A, const Point& x) { return curvature(A.jet(x)); }

HiggsValue covariant_laplacian(const HiggsJet& a, const ConnectionJet& A) {
  // sum_al grad_al grad_al a = lap a + [div A, a] + 2 [A_al, d_al a] + [A_al, [A_al, a]]
  const int vdim = a.value.vdim;
  HiggsValue out(vdim);
  LieVector divA;
  for (int al = 0; al < A.dim; ++al) divA += A.dA[al][al];
  for (int c = 0; c < vdim; ++c) {
    LieVector s = a.laplacian[c] + commutator(divA, a.value[c]);
    for (int al = 0; al < A.dim; ++al) {
      s += 2.0 * commutator(A.A[al], a.grad[al][c]);
      s += commutator(A.A[al], commutator(A.A[al], a.value[c]));
    }
    out[c] = -s;
  }
  return out;
}

HiggsValue covariant_laplacian(const HiggsField& a, const GaugeConnection& A, const Point& x) {
  return covariant_laplacian(a.jet(x), A.jet(x));
}

TwoForm exterior_covariant(const HiggsJet& a, const ConnectionJet& A) {
  if (a.value.vdim != A.dim) throw std::invalid_argument("exterior_covariant: a must be a 1-form");
  const auto g = covariant_gradient(a, A);
  TwoForm w(A.dim);
  for (int al = 0; al < A.dim; ++al)
    for (int be = al + 1; be < A.dim; ++be) w.set(al, be, g[al][be] - g[be][al]);
  return w;
}

LieVector covariant_divergence(const HiggsJet& a, const ConnectionJet& A) {
  if (a.value.vdim != A.dim) throw std::invalid_argument("covariant_divergence: a must be a 1-form");
  const auto g = covariant_gradient(a, A);
  LieVector s;
  for (int al = 0; al < A.dim; ++al) s += g[al][al];
  return s;
}

TwoForm wedge_form(const HiggsValue& a) {
  TwoForm w(a.vdim);
  for (int al = 0; al < a.vdim; ++al)
    for (int be = al + 1; be < a.vdim; ++be) w.set(al, be, commutator(a[al], a[be]));
  return w;
}

int levi_civita3(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

int levi_civita4(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

TwoForm hodge_star(const TwoForm& w) {
  if (w.dim != 4) throw std::invalid_argument("hodge_star: requires n = 4");
  TwoForm s(4);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      LieVector v;
      for (int c = 0; c < 4; ++c)
        for (int d = c + 1; d < 4; ++d) {
          const int e = levi_civita4(a, b, c, d);
          if (e != 0) v += static_cast<double>(e) * w.f[c][d];
        }
      s.set(a, b, v);
    }
  return s;
}

std::pair<TwoForm, TwoForm> hodge_split(const TwoForm& w) {
  if (w.dim != 4) throw std::invalid_argument("hodge_split: requires n = 4");
  const TwoForm s = hodge_star(w);
  return {0.5 * (w + s), 0.5 * (w - s)};
}

}  // namespace kwlab
