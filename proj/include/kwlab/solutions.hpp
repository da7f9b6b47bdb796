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

#ifndef KWLAB_SOLUTIONS_HPP_
#define KWLAB_SOLUTIONS_HPP_

#include <string>
#include <vector>

#include "kwlab/fieldkit.hpp"

namespace kwlab {

// Monopole on R^3: connection and a single su(2)-valued scalar (vdim 1).
struct MonopolePair {
  GaugeConnection connection;
  HiggsField higgs;
};

// Radial profile |Phi|(rho) of the charge-one monopole in this basis.
double ps_higgs_magnitude(double rho);

MonopolePair ps_monopole();

// Which equations a pair is claimed to solve. Verified by the residuals module.
struct ClaimedProperties {
  bool master = false;              // second-order equation for a at given A
  std::vector<double> kw_tau;       // tau values of the Kapustin-Witten family
  bool vafa_witten = false;         // first-order system in (alpha, phi) form
  bool wedge_zero = false;          // [a_b, a_c] = 0 for all b, c
  bool covariantly_constant = false;

  bool claims_kw(double tau) const;
};

struct SolutionPair {
  std::string label;
  GaugeConnection A;
  HiggsField a;
  ClaimedProperties claims;
};

// Pulls the monopole back along (x1..x4) -> (x1,x2,x3) and sets a = sign Phi dx4.
// Without a sign, both signs are tried and the one solving the tau = 1/2 system
// is kept. With a sign, throws ConventionError if that sign does not solve it.
SolutionPair lift_to_r4(const MonopolePair& m);
SolutionPair lift_to_r4(const MonopolePair& m, int sign);

enum class ModeKind { constant, linear_selfdual, radial_harmonic };

// Product connection, a = s(x) sigma placed in V:
//   constant:         a_c = v_c sigma
//   linear_selfdual:  a_c = s_c sigma with s = -x2 dx1 + x1 dx2 - x4 dx3 + x3 dx4 (v unused)
//   radial_harmonic:  a_c = v_c <v, x> sigma, the degree-1 harmonic along v
// dim 3 is allowed for constant and radial_harmonic.
SolutionPair commuting_mode(ModeKind kind, const VVector& v, const LieVector& sigma, int dim = 4,
                            int vdim = 4);

// Coefficients of the map (A, a) -> (A - shift a, scale a) sending a tau solution
// with a^a = 0 to a tau = 1/2 solution. `printed` keeps an alternative normalization
// that is off by a factor -2 in both coefficients and does not have this property.
enum class TauCoefficients { consistent, printed };
struct TauMap {
  double shift;
  double scale;
};
TauMap tau_coefficients(double tau, TauCoefficients kind = TauCoefficients::consistent);

SolutionPair tau_transform(const SolutionPair& p, double tau,
                           TauCoefficients kind = TauCoefficients::consistent);

// Inverse map: from a tau = 1/2 pair with a^a = 0 to a tau pair.
SolutionPair tau_transform_inverse(const SolutionPair& p, double tau,
                                   TauCoefficients kind = TauCoefficients::consistent);

// Real 1-form alpha_mu(x) = sum_nu linear[mu][nu] x_nu + constant[mu].
struct LinearOneForm {
  std::array<std::array<double, 4>, 4> linear{};
  std::array<double, 4> constant{};

  // (d alpha)_{mu nu} = linear[nu][mu] - linear[mu][nu]
  double d(int mu, int nu) const { return linear[nu][mu] - linear[mu][nu]; }
};

// A = alpha sigma, a = c sigma. Requires (d alpha)^+ = 0.
SolutionPair abelian_pair(const LinearOneForm& alpha, const LieVector& sigma, const VVector& c);

std::vector<std::string> registry_labels();
std::string registry_description(const std::string& label);
SolutionPair make_solution(const std::string& label);

}  // namespace kwlab

#endif  // KWLAB_SOLUTIONS_HPP_
