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

#ifndef KWLAB_RESIDUALS_HPP_
#define KWLAB_RESIDUALS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "kwlab/fieldkit.hpp"
#include "kwlab/quadrature.hpp"
#include "kwlab/solutions.hpp"

namespace kwlab {

enum class Equation { eq11, kw, vw, kw_half, monopole };

std::string equation_name(Equation eq, double tau = 0.0);

// grad^t grad a + [a_c, [a, a_c]]
HiggsValue residual_eq11(const SolutionPair& p, const Point& x);

struct KwResidual {
  TwoForm plus;       // (1 - tau)(F - a^a)^+ - tau (d_A a)^+
  TwoForm minus;      // tau (F - a^a)^- + (1 - tau)(d_A a)^-
  LieVector gauge;    // d_A^* a, as sum_alpha grad_alpha a_alpha
  double max_norm() const;
};
KwResidual residual_kw(const SolutionPair& p, double tau, const Point& x);

// (alpha, phi) presentation: alpha has vdim 3 (coefficients along the self-dual
// frame w1 = dx12 + dx34, w2 = dx13 + dx42, w3 = dx14 + dx23), phi has vdim 1.
struct VafaWittenFields {
  GaugeConnection A;
  HiggsField alpha;
  HiggsField phi;
};

// Identification of V = R^4 with the self-dual forms plus R used throughout:
// alpha = s (a3, -a2, a1), phi = s a4, s = 2^(-1/4).
VafaWittenFields vw_split(const SolutionPair& p);

struct VwResidual {
  std::array<LieVector, 3> curvature{};  // F^+_k - (1/(2 sqrt2)) eps_kbc [alpha_b, alpha_c] - (1/sqrt2) [alpha_k, phi]
  std::array<LieVector, 4> one_form{};   // (*d_A alpha + d_A phi)_nu
  double max_norm() const;
};
VwResidual residual_vw(const VafaWittenFields& f, const Point& x);

// Component of a 2-form along the self-dual frame (w^k, 1/2 normalization),
// and along the anti-self-dual frame dx12 - dx34, dx13 - dx42, dx14 - dx23.
LieVector self_dual_component(const TwoForm& w, int k);
LieVector anti_self_dual_component(const TwoForm& w, int k);

// F_ij - eps_ijk grad_k Phi
TwoForm residual_monopole(const MonopolePair& m, const Point& x);

struct StressTensor {
  int dim = 4;
  std::array<std::array<double, 4>, 4> s{};
};

// S_ab = <grad_a b, grad_b b> - 1/2 delta_ab (|grad b|^2 + |[a, b]|^2), b = a(v)
StressTensor stress_tensor(const SolutionPair& p, const VVector& v, const Point& x);

// <F_ba, [b, grad_b b]> - <[grad_a a_c, b], [a_c, b]>, the divergence of S on solutions.
std::array<double, 4> stress_divergence_source(const SolutionPair& p, const VVector& v,
                                               const Point& x);

struct PohozaevResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, bulk energy term), 0 if all vanish
};
PohozaevResult pohozaev_check(const SolutionPair& p, const VVector& v, double r,
                              const SphereQuadrature& q, int radial_level = 64);

inline constexpr std::uint64_t kStandardSeed = 20260415;

// Seeded uniform points in the radius-`radius` ball of R^dim.
std::vector<Point> standard_points(int dim, std::size_t count = 100, double radius = 5.0,
                                   std::uint64_t seed = kStandardSeed);

struct ResidualRow {
  Point x{};
  std::string component;
  double norm = 0.0;
};

struct ResidualReport {
  std::string equation;
  int dim = 4;
  std::vector<Point> points;
  std::vector<double> norms;       // per point, max over components
  std::vector<ResidualRow> rows;   // per point and component
  double max = 0.0;
  double rms = 0.0;
};

ResidualReport residual_report(const SolutionPair& p, Equation eq, const std::vector<Point>& pts,
                               double tau = 0.5);
ResidualReport monopole_report(const MonopolePair& m, const std::vector<Point>& pts);

// One report per claimed property of p (master, each kw tau, vw).
std::vector<ResidualReport> verify_claims(const SolutionPair& p, const std::vector<Point>& pts);

}  // namespace kwlab

#endif  // KWLAB_RESIDUALS_HPP_
