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

#include "kwlab/checks.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "kwlab/quadrature.hpp"

namespace kwlab {

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

CheckResult make(std::string name, double value, double threshold, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = threshold;
  c.passed = value <= threshold;
  c.detail = std::move(detail);
  return c;
}

double quad(const SymMatrix& m, const VVector& u, const VVector& v) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) s += u[i] * m(i, j) * v[j];
  return s;
}

double diff_norm(const SymMatrix& a, const SymMatrix& b) {
  double s = 0.0;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) s += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
  return std::sqrt(s);
}

// Largest eigenvector of T(r): the direction along which a(v) carries the most.
VVector principal_direction(const SolutionPair& p, double r, int level) {
  const TMatrix t = t_matrix(p.a, r, sphere_quadrature(p.A.dim(), level));
  return t.largest();
}

}  // namespace

std::vector<CheckResult> claim_checks(const SolutionPair& p, const CheckOptions& opt) {
  std::vector<CheckResult> out;
  const auto pts = standard_points(p.A.dim(), 100, 5.0, opt.seed);
  for (const auto& rep : verify_claims(p, pts))
    out.push_back(make("claim " + rep.equation, rep.max, opt.claim_tol, "max over 100 points in B5"));
  if (p.claims.wedge_zero && p.A.dim() == 4)
    for (double tau : p.claims.kw_tau) {
      if (tau <= 0.0 || tau >= 1.0 || tau == 0.5) continue;
      const SolutionPair q = tau_transform(p, tau);
      const auto rep = residual_report(q, Equation::kw_half, pts);
      out.push_back(make("tau-covariance from " + fmt("%g", tau), rep.max, opt.claim_tol,
                         "transformed pair, tau = 1/2 residual"));
    }
  return out;
}

double frequency_identity_error(const RadialProfile& prof) {
  const auto& R = prof.rows;
  if (R.size() < 5) throw std::invalid_argument("need at least 5 profile rows");
  const double dt = std::log(R[1].r / R[0].r);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < R.size(); ++i) {
    const double d = (std::log(R[i - 2].kappa) - 8.0 * std::log(R[i - 1].kappa) +
                      8.0 * std::log(R[i + 1].kappa) - std::log(R[i + 2].kappa)) /
                     (12.0 * dt);
    worst = std::max(worst, std::abs(d - R[i].N) / (R[i].N + 1.0));
  }
  return worst;
}

std::vector<CheckResult> profile_checks(const RadialProfile& prof, double C0) {
  if (!prof.has_matrices) throw std::invalid_argument("profile checks need the T and E matrices");
  const auto& R = prof.rows;
  std::vector<CheckResult> out;
  double kdec = 0.0, ldec = 0.0, nmin = 0.0, tr = 0.0, psd = 0.0;
  double bound = 0.0, sandwich = 0.0, edec = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    const auto& a = R[i];
    nmin = std::min(nmin, a.N);
    tr = std::max(tr, std::abs(a.trace_T - a.kappa * a.kappa) / std::max(a.trace_T, DBL_MIN));
    psd = std::max(psd, -a.lambda_min / std::max(a.trace_T, DBL_MIN));
    if (i + 1 == R.size()) break;
    const auto& b = R[i + 1];
    kdec = std::max(kdec, (a.kappa - b.kappa) / a.kappa);
    ldec = std::max(ldec, (a.lambda_min - b.lambda_min) / std::max(a.trace_T, DBL_MIN));
    const double h = b.r - a.r;
    const double lhs = diff_norm(b.T, a.T) / h;
    const double rhs = C0 * (a.N / a.r) * a.T.frobenius();
    bound = std::max(bound, (lhs - rhs) / std::max(a.T.frobenius(), DBL_MIN) * a.r);
    const SymMatrix dT = [&] {
      SymMatrix d(a.T.n);
      for (int x = 0; x < a.T.n; ++x)
        for (int y = 0; y < a.T.n; ++y) d(x, y) = b.T(x, y) - a.T(x, y);
      return d;
    }();
    sandwich = std::max(sandwich, (b.lambda_min - a.lambda_min) - quad(dT, a.v, a.v));
    const double ea = quad(a.E, prof.v_fixed, prof.v_fixed), eb = quad(b.E, prof.v_fixed, prof.v_fixed);
    edec = std::max(edec, (ea - eb) / std::max(std::abs(R.back().E.trace()), DBL_MIN));
  }
  out.push_back(make("kappa non-decreasing", kdec, 1e-9, "max relative decrease"));
  out.push_back(make("lambda_min non-decreasing", ldec, 1e-9, "max decrease / trace T"));
  out.push_back(make("N non-negative", -nmin, 1e-12, "-min N"));
  out.push_back(make("trace T = kappa^2", tr, 1e-9, "max relative difference"));
  out.push_back(make("T positive semi-definite", psd, 1e-12, "-lambda_min / trace T"));
  out.push_back(make("frequency identity on grid", frequency_identity_error(prof), 1e-3,
                     "max |dln kappa/dln r - N| / (N + 1)"));
  out.push_back(make("derivative bound on T", std::max(bound, 0.0), 1e-9,
                     "max (|dT|/h - C0 N/r |T|) r/|T|, C0 = " + fmt("%g", C0)));
  out.push_back(make("eigenvalue sandwich", sandwich, 1e-9,
                     "max lambda(r+d) - lambda(r) - v^t (T(r+d) - T(r)) v"));
  out.push_back(make("s^(n-2) kappa_v^2 N_v increasing", edec, 1e-12,
                     "fixed v, max relative decrease"));
  return out;
}

CheckResult integrated_frequency_check(const SolutionPair& p, double r0, double r1, int samples,
                                       const ProfileOptions& opt, double tol) {
  const RadialProfile prof = build_profile(p, r0, r1, samples, opt);
  const auto& R = prof.rows;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < R.size(); ++i)
    integral += 0.5 * (R[i].N + R[i + 1].N) * std::log(R[i + 1].r / R[i].r);
  const double ratio = R.back().kappa / R.front().kappa;
  const double predicted = std::exp(integral);
  return make("integrated frequency " + fmt("%g", r0) + ".." + fmt("%g", r1),
              std::abs(ratio / predicted - 1.0), tol,
              "kappa ratio " + fmt("%.9g", ratio) + " vs " + fmt("%.9g", predicted));
}

CheckResult pohozaev_refinement_check(const SolutionPair& p, double r, int level, double gap_tol,
                                      double min_factor) {
  const VVector v = principal_direction(p, r, 2 * level);
  const int n = p.A.dim();
  const PohozaevResult g1 = pohozaev_check(p, v, r, sphere_quadrature(n, level));
  const PohozaevResult g2 = pohozaev_check(p, v, r, sphere_quadrature(n, 2 * level));
  // a gap at rounding level has nothing left to refine
  const bool converged = g2.gap < 1e-12;
  const double factor = g2.gap > 0.0 ? g1.gap / g2.gap : std::numeric_limits<double>::infinity();
  CheckResult c = make("pohozaev identity r=" + fmt("%g", r), g1.gap, gap_tol,
                       "gap " + fmt("%.3e", g1.gap) + " at level " + std::to_string(level) + ", " +
                           fmt("%.3e", g2.gap) + " at level " + std::to_string(2 * level));
  c.passed = g1.gap <= gap_tol && (converged || factor >= min_factor);
  return c;
}

CheckResult stress_divergence_check(const SolutionPair& p, std::size_t count, std::uint64_t seed,
                                    double tol) {
  const int n = p.A.dim();
  const VVector v = principal_direction(p, 3.0, 16);
  const auto pts = standard_points(n, count, 5.0, seed);
  double worst = 0.0;
  for (const Point& x : pts) {
    const auto src = stress_divergence_source(p, v, x);
    double scale = 1.0;
    for (int a = 0; a < n; ++a) scale = std::max(scale, std::abs(src[a]));
    double xn = 0.0;
    for (int a = 0; a < n; ++a) xn += x[a] * x[a];
    const double h = 1e-3 * (1.0 + std::sqrt(xn));
    std::array<double, 4> div{};
    for (int b = 0; b < n; ++b) {
      auto at = [&](double t) {
        Point y = x;
        y[b] += t;
        return stress_tensor(p, v, y);
      };
      const StressTensor m2 = at(-2 * h), m1 = at(-h), p1 = at(h), p2 = at(2 * h);
      for (int a = 0; a < n; ++a)
        div[a] += (m2.s[a][b] - 8.0 * m1.s[a][b] + 8.0 * p1.s[a][b] - p2.s[a][b]) / (12.0 * h);
    }
    for (int a = 0; a < n; ++a) worst = std::max(worst, std::abs(div[a] - src[a]) / scale);
  }
  return make("stress divergence", worst, tol, std::to_string(count) + " points, 4th-order differences");
}

std::vector<CheckResult> sup_bound_checks(const SolutionPair& p, double r, const ProfileOptions& opt,
                                          double C, std::uint64_t seed) {
  const int n = p.A.dim();
  const SphereQuadrature q = sphere_quadrature(n, opt.angular_level);
  const TMatrix t = t_matrix(p.a, r, q);
  const Moments mom = ball_moments(p.a, p.A, r, q, opt.radial_level);
  const double omega = unit_sphere_measure(n);
  auto pts = standard_points(n, 4000, 7.0 * r / 8.0, seed);
  pts.push_back(Point{});
  std::vector<CheckResult> out;
  const std::pair<const char*, VVector> dirs[] = {{"smallest", t.smallest()}, {"largest", t.largest()}};
  for (const auto& [tag, v] : dirs) {
    double sup = 0.0;
    for (const Point& x : pts) sup = std::max(sup, norm(contract(p.a(x), v)));
    const double kv2 = quad(t.entries, v, v);
    const std::string where = std::string(" (") + tag + " v, r=" + fmt("%g", r) + ")";
    if (!(kv2 > kDegenerateRel * t.trace())) {
      out.push_back(make(std::string("sup bound, degenerate direction") + where, sup,
                         1e-6 * std::sqrt(t.trace()), "a(v) must vanish in the ball"));
      continue;
    }
    const double kv = std::sqrt(kv2);
    const double Nv = quad(mom.E, v, v) / (std::pow(r, n - 2) * kv2);
    const double b1 = C * kv, b2 = (1.0 + C * std::sqrt(Nv)) * kv / std::sqrt(omega);
    // the constant field attains the second bound with equality
    const double slack = 1.0 + 1e-10;
    out.push_back(make("sup |a(v)| <= C kappa_v" + where, sup / b1, slack,
                       "sup " + fmt("%.6g", sup) + ", bound " + fmt("%.6g", b1)));
    out.push_back(make("sup |a(v)| <= (1 + C sqrt N_v) kappa_v / sqrt omega" + where, sup / b2, slack,
                       "sup " + fmt("%.6g", sup) + ", bound " + fmt("%.6g", b2)));
  }
  return out;
}

CheckResult local_average_check(const SolutionPair& p, double s, const ProfileOptions& opt,
                                std::uint64_t seed) {
  const int n = p.A.dim();
  const SphereQuadrature q = sphere_quadrature(n, opt.angular_level);
  const VVector v = principal_direction(p, 3.0, opt.angular_level);
  const double c = std::sqrt(unit_sphere_measure(n) / n);
  double worst = 0.0;
  for (const Point& x : standard_points(n, 5, 3.0, seed)) {
    const double M = local_average(p.a, v, x, s, q, opt.radial_level);
    const double lower = c * norm(contract(p.a(x), v));
    if (lower > 0.0) worst = std::max(worst, lower / M - 1.0);
  }
  return make("local average lower bound s=" + fmt("%g", s), worst, 1e-10,
              "max sqrt(omega/n)|a(v)|(p) / M_v - 1 at 5 centres");
}

std::vector<CheckResult> identity_suite(const SolutionPair& p, const CheckOptions& opt) {
  std::vector<CheckResult> out = claim_checks(p, opt);
  const RadialProfile prof = build_profile(p, opt.r_min, opt.r_max, opt.samples, opt.profile);
  for (auto& c : profile_checks(prof, opt.bound_constant)) out.push_back(std::move(c));
  out.push_back(integrated_frequency_check(p, 2.0, 10.0, 41, opt.profile));
  if (p.claims.master) {
    out.push_back(pohozaev_refinement_check(p, opt.pohozaev_radius, opt.pohozaev_level));
    out.push_back(stress_divergence_check(p, 20, opt.seed));
    out.push_back(local_average_check(p, 1.0, opt.profile, opt.seed));
  }
  for (auto& c : sup_bound_checks(p, 8.0, opt.profile, opt.bound_constant, opt.seed)) out.push_back(std::move(c));
  return out;
}

}  // namespace kwlab
