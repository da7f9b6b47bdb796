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

#ifndef KWLAB_DIAGNOSTICS_HPP_
#define KWLAB_DIAGNOSTICS_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/eigen.hpp"
#include "kwlab/fieldkit.hpp"
#include "kwlab/quadrature.hpp"
#include "kwlab/simd/kernels.hpp"
#include "kwlab/solutions.hpp"

namespace kwlab {

// kappa(r)^2 = r^{1-n} int_{|x|=r} |a|^2, evaluated as the weighted node sum.
double kappa(const HiggsField& a, double r, const SphereQuadrature& q);
double kappa_v(const HiggsField& a, const VVector& v, double r, const SphereQuadrature& q);

// d(ln kappa)/dr from the radial derivative of a on the shell (no differencing).
double kappa_log_derivative(const HiggsField& a, double r, const SphereQuadrature& q);

// Quadrature moments at radius r:
//   T_cd = r^{1-n} int_{|x|=r} <a_c, a_d>
//   E_cd = int_{|x|<=r} sum_al <grad_al a_c, grad_al a_d> + sum_e <[a_e, a_c], [a_e, a_d]>
struct Moments {
  double r = 0.0;
  SymMatrix T;
  SymMatrix E;
};

// Sphere sums of the three pairings at radius r (weights only, no r powers).
simd::MomentSums sphere_moments(const HiggsField& a, const GaugeConnection& A, double r,
                                const SphereQuadrature& q);
Moments ball_moments(const HiggsField& a, const GaugeConnection& A, double r,
                     const SphereQuadrature& q, int radial_level = 64);

// N(r) = r^{2-n} kappa^{-2} int_{B_r} (|grad a|^2 + sum_c |[a_c, a]|^2)
double frequency(const HiggsField& a, const GaugeConnection& A, double r, const SphereQuadrature& q,
                 int radial_level = 64);
double frequency_v(const HiggsField& a, const GaugeConnection& A, const VVector& v, double r,
                   const SphereQuadrature& q, int radial_level = 64);

struct TMatrix {
  double r = 0.0;
  SymMatrix entries;
  EigenDecomposition eig;
  double trace() const { return entries.trace(); }
  VVector smallest() const;
  VVector largest() const;
};

TMatrix t_matrix(const HiggsField& a, double r, const SphereQuadrature& q);

double cross_correlation(const HiggsField& a, const VVector& u, const VVector& v, double r,
                         const SphereQuadrature& q);
// (2 / r^{n-1}) int_{B_r} <grad a(u), grad a(v)> + <[a, a(u)], [a, a(v)]>
double cross_correlation_rate(const HiggsField& a, const GaugeConnection& A, const VVector& u,
                              const VVector& v, double r, const SphereQuadrature& q,
                              int radial_level = 64);

// ((1/s^n) int_{|x-p|<=s} |a(v)|^2)^{1/2}
double local_average(const HiggsField& a, const VVector& v, const Point& p, double s,
                     const SphereQuadrature& q, int radial_level = 64);

struct ProfileRow {
  double r = 0.0;
  double kappa = 0.0;
  double N = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double trace_T = 0.0;
  double kappa_v = 0.0;  // along the tracked smallest eigenvector
  double N_v = 0.0;      // nan when kappa_v vanishes
  double P_uv = 0.0;     // against the fixed (u, v) pair
  VVector v{};           // tracked smallest eigenvector
  SymMatrix T;
  SymMatrix E;
};

struct RadialProfile {
  int dim = 4;
  int vdim = 4;
  bool has_matrices = false;  // false for profiles read back from CSV
  VVector u_fixed{};          // largest eigenvector of T(r_max)
  VVector v_fixed{};          // smallest eigenvector of T(r_max)
  std::vector<ProfileRow> rows;
};

struct ProfileOptions {
  int angular_level = 24;
  int radial_level = 64;   // Gauss-Legendre nodes on the innermost ball
  int annulus_level = 4;   // nodes per annulus between adjacent radii
  int threads = 0;
};

// Geometric grid r_min .. r_max with `samples` radii.
RadialProfile build_profile(const SolutionPair& p, double r_min, double r_max, int samples,
                            const ProfileOptions& opt = {});

// Relative tolerance used to decide that T is degenerate along a direction.
inline constexpr double kDegenerateRel = 1e-12;

struct SearchParams {
  double epsilon = 0.01;
  double rho = 2.0;
  double report_constant = 10.0;  // C in check (b)
  std::size_t min_samples = 50;
};

enum class VCheck { passed, failed, degenerate };

struct FlatRadiusReport {
  bool found = false;
  double radius = 0.0;
  std::size_t index = 0;
  double window_lo = 0.0, window_hi = 0.0;
  double nominal_window_lo = 0.0;
  std::size_t window_samples = 0;
  double sub_lo = 0.0;
  std::size_t sub_samples = 0;
  double threshold_N = 0.0;  // sqrt(eps)
  double threshold_a = 0.0;  // eps^{1/4}
  double threshold_b = 0.0;  // 1 - C eps^{1/4} |ln eps|
  bool check_a = false;
  double max_N = 0.0;
  bool check_b = false;
  double min_kappa_ratio = 0.0;
  VCheck check_c = VCheck::failed;
  double max_N_v = 0.0;
  double min_kappa_v_ratio = 0.0;
  VVector v{};
  bool outside_small_eps_regime = false;  // eps >= 1/100
  std::string note;
  bool succeeded() const { return found && check_a && check_b && check_c != VCheck::failed; }
};

class FlatRadiusNotFound : public std::runtime_error {
 public:
  explicit FlatRadiusNotFound(FlatRadiusReport r)
      : std::runtime_error("no sampled radius in the window has N <= sqrt(eps)"), report(std::move(r)) {}
  FlatRadiusReport report;
};

FlatRadiusReport find_flat_radius(const RadialProfile& profile, const SearchParams& params);

void write_profile_csv(std::ostream& os, const RadialProfile& profile);
RadialProfile read_profile_csv(std::istream& is);

}  // namespace kwlab

#endif  // KWLAB_DIAGNOSTICS_HPP_
