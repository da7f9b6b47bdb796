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

#ifndef KWLAB_CHECKS_HPP_
#define KWLAB_CHECKS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "kwlab/diagnostics.hpp"
#include "kwlab/residuals.hpp"

namespace kwlab {

// One row of the identity table. `value` is the measured violation (or gap),
// compared against `threshold`.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  double r_min = 0.5;
  double r_max = 50.0;
  int samples = 100;
  ProfileOptions profile;
  double claim_tol = 1e-8;
  double bound_constant = 10.0;     // C0 in the derivative bound, C in the sup bounds
  double pohozaev_radius = 3.0;
  int pohozaev_level = 12;          // compared against twice this level
  std::uint64_t seed = kStandardSeed;
};

// Claimed residuals on the standard point set.
std::vector<CheckResult> claim_checks(const SolutionPair& p, const CheckOptions& opt);

// Properties that only need a sampled profile (with matrices).
std::vector<CheckResult> profile_checks(const RadialProfile& prof, double bound_constant = 10.0);

// d ln kappa / d ln r by 5-point differences on a uniform-in-ln r grid, compared with N.
// Returns max |N_fd - N| / (N + 1) over rows with two neighbours on each side.
double frequency_identity_error(const RadialProfile& prof);

// kappa(r1)/kappa(r0) against exp(int N/t dt) (trapezoid on a fresh profile).
CheckResult integrated_frequency_check(const SolutionPair& p, double r0, double r1, int samples,
                                       const ProfileOptions& opt, double tol = 5e-3);

CheckResult pohozaev_refinement_check(const SolutionPair& p, double r, int level,
                                      double gap_tol = 1e-3, double min_factor = 4.0);

// Divergence of the stress tensor by 4th-order differences against its closed form.
CheckResult stress_divergence_check(const SolutionPair& p, std::size_t count, std::uint64_t seed,
                                    double tol = 1e-5);

// Sup of |a(v)| over |x| <= 7r/8 against C kappa_v(r) and (1 + C sqrt(N_v)) kappa_v / sqrt(omega).
std::vector<CheckResult> sup_bound_checks(const SolutionPair& p, double r, const ProfileOptions& opt,
                                          double C, std::uint64_t seed);

// M_v(p, s) >= sqrt(omega/n) |a(v)|(p) at seeded centres.
CheckResult local_average_check(const SolutionPair& p, double s, const ProfileOptions& opt,
                                std::uint64_t seed);

// Full table for one solution.
std::vector<CheckResult> identity_suite(const SolutionPair& p, const CheckOptions& opt);

}  // namespace kwlab

#endif  // KWLAB_CHECKS_HPP_
