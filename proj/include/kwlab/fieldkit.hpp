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

#ifndef KWLAB_FIELDKIT_HPP_
#define KWLAB_FIELDKIT_HPP_

#include <array>
#include <functional>
#include <utility>

#include "kwlab/algebra.hpp"

namespace kwlab {

using Point = std::array<double, 4>;

enum class DerivativeMode { analytic, numeric };

// Antisymmetric n x n array of LieVectors.
struct TwoForm {
  int dim = 4;
  std::array<std::array<LieVector, 4>, 4> f{};

  TwoForm() = default;
  explicit TwoForm(int n) : dim(n) {}

  const LieVector& operator()(int a, int b) const { return f[a][b]; }
  void set(int a, int b, const LieVector& v) {
    f[a][b] = v;
    f[b][a] = -v;
  }
  TwoForm& operator+=(const TwoForm& o);
  TwoForm& operator-=(const TwoForm& o);
  TwoForm& operator*=(double s);
  friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
  friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
  friend TwoForm operator*(double s, TwoForm a) { return a *= s; }
};

// Max norm over components alpha < beta.
double max_norm(const TwoForm& w);

// Values and first partials of a connection. dA[b][a] = d_b A_a.
struct ConnectionJet {
  int dim = 4;
  std::array<LieVector, 4> A{};
  std::array<std::array<LieVector, 4>, 4> dA{};
};

// Value, first partials and flat Laplacian of a Higgs field.
struct HiggsJet {
  HiggsValue value;
  std::array<HiggsValue, 4> grad;
  HiggsValue laplacian;
};

class GaugeConnection {
 public:
  using ValueFn = std::function<std::array<LieVector, 4>(const Point&)>;
  using JetFn = std::function<ConnectionJet(const Point&)>;

  GaugeConnection() = default;

  static GaugeConnection product(int dim);
  static GaugeConnection analytic(int dim, ValueFn value, JetFn jet);
  static GaugeConnection numeric(int dim, ValueFn value, double step_scale = 1e-3);

  // Same connection with derivatives taken by finite differences.
  GaugeConnection as_numeric(double step_scale = 1e-3) const;

  int dim() const { return dim_; }
  DerivativeMode mode() const { return mode_; }
  bool is_product() const { return product_; }

  std::array<LieVector, 4> operator()(const Point& x) const;
  ConnectionJet jet(const Point& x) const;

 private:
  int dim_ = 4;
  DerivativeMode mode_ = DerivativeMode::analytic;
  bool product_ = true;
  double step_scale_ = 1e-3;
  ValueFn value_;
  JetFn jet_;
};

class HiggsField {
 public:
  using ValueFn = std::function<HiggsValue(const Point&)>;
  using JetFn = std::function<HiggsJet(const Point&)>;

  HiggsField() = default;

  static HiggsField zero(int dim, int vdim);
  static HiggsField analytic(int dim, int vdim, ValueFn value, JetFn jet);
  static HiggsField numeric(int dim, int vdim, ValueFn value, double step_scale = 1e-3);

  HiggsField as_numeric(double step_scale = 1e-3) const;

  int dim() const { return dim_; }
  int vdim() const { return vdim_; }
  DerivativeMode mode() const { return mode_; }

  HiggsValue operator()(const Point& x) const;
  HiggsJet jet(const Point& x) const;

 private:
  int dim_ = 4;
  int vdim_ = 1;
  DerivativeMode mode_ = DerivativeMode::analytic;
  double step_scale_ = 1e-3;
  ValueFn value_;
  JetFn jet_;
};

// Finite-difference step used by the numeric mode at x.
double fd_step(const Point& x, int dim, double step_scale);

// grad_alpha a = d_alpha a + [A_alpha, a], componentwise in V.
std::array<HiggsValue, 4> covariant_gradient(const HiggsJet& a, const ConnectionJet& A);
HiggsValue covariant_derivative(const HiggsField& a, const GaugeConnection& A, const Point& x,
                                int alpha);

// F_ab = d_a A_b - d_b A_a + [A_a, A_b]
TwoForm curvature(const ConnectionJet& A);
TwoForm curvature(const GaugeConnection& A, const Point& x);

// -sum_alpha grad_alpha grad_alpha a
HiggsValue covariant_laplacian(const HiggsJet& a, const ConnectionJet& A);
HiggsValue covariant_laplacian(const HiggsField& a, const GaugeConnection& A, const Point& x);

// For a with vdim == dim read as an su(2)-valued 1-form.
TwoForm exterior_covariant(const HiggsJet& a, const ConnectionJet& A);  // (d_A a)_ab
LieVector covariant_divergence(const HiggsJet& a, const ConnectionJet& A);  // sum grad_a a_a
TwoForm wedge_form(const HiggsValue& a);  // (a^a)_ab = [a_a, a_b]

// Orientation dx1^dx2^dx3^dx4; (*w)_ab = 1/2 eps_abcd w_cd.
TwoForm hodge_star(const TwoForm& w);
std::pair<TwoForm, TwoForm> hodge_split(const TwoForm& w);

// eps_{abcd} for indices in 0..3 (0 when any repeat).
int levi_civita4(int a, int b, int c, int d);
int levi_civita3(int a, int b, int c);

}  // namespace kwlab

#endif  // KWLAB_FIELDKIT_HPP_
