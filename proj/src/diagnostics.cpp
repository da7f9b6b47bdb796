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

#include "kwlab/diagnostics.hpp"

#include <algorithm>
#include <cfloat>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "kwlab/errors.hpp"
#include "kwlab/parallel.hpp"

namespace kwlab {

namespace {

void check_radius(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
}

void check_unit(const VVector& v, int vdim) {
  double s = 0.0;
  for (int c = 0; c < vdim; ++c) s += v[c] * v[c];
  if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("direction must be a unit vector");
}

Point on_sphere(const SphereQuadrature& q, std::size_t i, double r) {
  Point p{};
  for (int k = 0; k < q.dim; ++k) p[k] = r * q.nodes[i][k];
  return p;
}

double quad_form(const SymMatrix& m, const VVector& u, const VVector& v) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) s += u[i] * m(i, j) * v[j];
  return s;
}

SymMatrix from_sums(const double* s, int vdim, double scale) {
  SymMatrix m(vdim);
  for (int i = 0; i < vdim; ++i)
    for (int j = 0; j < vdim; ++j) m(i, j) = scale * s[4 * i + j];
  return m;
}

// Scratch buffers for one chunk of sphere nodes in structure-of-arrays form.
constexpr std::size_t kChunk = 256;

struct Scratch {
  std::vector<double> w, a, g;
  explicit Scratch(int vdim, int dim)
      : w(kChunk), a(static_cast<std::size_t>(vdim) * 3 * kChunk),
        g(static_cast<std::size_t>(dim) * vdim * 3 * kChunk) {}
};

}  // namespace

double kappa(const HiggsField& a, double r, const SphereQuadrature& q) {
  check_radius(r);
  return std::sqrt(sphere_sum([&](const Point& x) { return norm2(a(x)); }, r, q));
}

double kappa_v(const HiggsField& a, const VVector& v, double r, const SphereQuadrature& q) {
  check_radius(r);
  check_unit(v, a.vdim());
  return std::sqrt(sphere_sum([&](const Point& x) { return norm2(contract(a(x), v)); }, r, q));
}

double kappa_log_derivative(const HiggsField& a, double r, const SphereQuadrature& q) {
  check_radius(r);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Point x = on_sphere(q, i, r);
    const HiggsJet j = a.jet(x);
    HiggsValue dr(a.vdim());
    for (int k = 0; k < q.dim; ++k) dr += q.nodes[i][k] * j.grad[k];
    num += q.weights[i] * inner(j.value, dr);
    den += q.weights[i] * norm2(j.value);
  }
  if (!(den > DBL_MIN)) throw VanishingKappaError(r);
  return num / den;
}

simd::MomentSums sphere_moments(const HiggsField& a, const GaugeConnection& A, double r,
                                const SphereQuadrature& q) {
  const int vd = a.vdim(), n = q.dim;
  if (A.dim() != n || a.dim() != n) throw std::invalid_argument("dimension mismatch");
  Scratch s(vd, n);
  simd::MomentSums sums;
  simd::MomentBatch b;
  b.vdim = vd;
  b.dim = n;
  b.w = s.w.data();
  for (int c = 0; c < vd; ++c)
    for (int k = 0; k < 3; ++k) {
      b.a[c][k] = s.a.data() + (3 * c + k) * kChunk;
      for (int al = 0; al < n; ++al) b.g[al][c][k] = s.g.data() + ((al * vd + c) * 3 + k) * kChunk;
    }
  const auto& kern = simd::kernels();
  for (std::size_t start = 0; start < q.size(); start += kChunk) {
    const std::size_t cnt = std::min(kChunk, q.size() - start);
    for (std::size_t i = 0; i < cnt; ++i) {
      const Point x = on_sphere(q, start + i, r);
      const HiggsJet j = a.jet(x);
      const auto g = covariant_gradient(j, A.jet(x));
      s.w[i] = q.weights[start + i];
      for (int c = 0; c < vd; ++c)
        for (int k = 0; k < 3; ++k) {
          s.a[(3 * c + k) * kChunk + i] = j.value[c][k];
          for (int al = 0; al < n; ++al) s.g[((al * vd + c) * 3 + k) * kChunk + i] = g[al][c][k];
        }
    }
    b.count = cnt;
    kern.moments(b, sums);
  }
  return sums;
}

namespace {

// int_{r0 <= |x| <= r1} of (G + C) pairings.
SymMatrix annulus_energy(const HiggsField& a, const GaugeConnection& A, double r0, double r1,
                         const SphereQuadrature& q, int level) {
  const int vd = a.vdim();
  SymMatrix E(vd);
  const GaussLegendre gl = gauss_legendre(level, r0, r1);
  for (int i = 0; i < level; ++i) {
    const double R = gl.x[i];
    const simd::MomentSums s = sphere_moments(a, A, R, q);
    const double f = gl.w[i] * std::pow(R, q.dim - 1);
    for (int c = 0; c < vd; ++c)
      for (int d = 0; d < vd; ++d) E(c, d) += f * (s.G[4 * c + d] + s.C[4 * c + d]);
  }
  return E;
}

}  // namespace

Moments ball_moments(const HiggsField& a, const GaugeConnection& A, double r,
                     const SphereQuadrature& q, int radial_level) {
  check_radius(r);
  Moments m;
  m.r = r;
  m.E = annulus_energy(a, A, 0.0, r, q, radial_level);
  const simd::MomentSums s = sphere_moments(a, A, r, q);
  m.T = from_sums(s.T, a.vdim(), 1.0);
  return m;
}

double frequency(const HiggsField& a, const GaugeConnection& A, double r, const SphereQuadrature& q,
                 int radial_level) {
  const Moments m = ball_moments(a, A, r, q, radial_level);
  const double den = std::pow(r, q.dim - 2) * m.T.trace();
  if (!(den > DBL_MIN)) throw VanishingKappaError(r);
  return m.E.trace() / den;
}

double frequency_v(const HiggsField& a, const GaugeConnection& A, const VVector& v, double r,
                   const SphereQuadrature& q, int radial_level) {
  check_unit(v, a.vdim());
  const Moments m = ball_moments(a, A, r, q, radial_level);
  const double den = std::pow(r, q.dim - 2) * quad_form(m.T, v, v);
  if (!(den > DBL_MIN)) throw VanishingKappaError(r);
  return quad_form(m.E, v, v) / den;
}

VVector TMatrix::smallest() const {
  VVector v{};
  for (int i = 0; i < eig.n; ++i) v[i] = eig.vectors[0][i];
  return v;
}

VVector TMatrix::largest() const {
  VVector v{};
  for (int i = 0; i < eig.n; ++i) v[i] = eig.vectors[eig.n - 1][i];
  return v;
}

TMatrix t_matrix(const HiggsField& a, double r, const SphereQuadrature& q) {
  check_radius(r);
  const int vd = a.vdim();
  TMatrix t;
  t.r = r;
  t.entries = SymMatrix(vd);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const HiggsValue h = a(on_sphere(q, i, r));
    for (int c = 0; c < vd; ++c)
      for (int d = c; d < vd; ++d) t.entries(c, d) += q.weights[i] * inner(h[c], h[d]);
  }
  for (int c = 0; c < vd; ++c)
    for (int d = 0; d < c; ++d) t.entries(c, d) = t.entries(d, c);
  t.eig = jacobi_eigen(t.entries);
  return t;
}

double cross_correlation(const HiggsField& a, const VVector& u, const VVector& v, double r,
                         const SphereQuadrature& q) {
  check_unit(u, a.vdim());
  check_unit(v, a.vdim());
  return quad_form(t_matrix(a, r, q).entries, u, v);
}

double cross_correlation_rate(const HiggsField& a, const GaugeConnection& A, const VVector& u,
                              const VVector& v, double r, const SphereQuadrature& q,
                              int radial_level) {
  check_unit(u, a.vdim());
  check_unit(v, a.vdim());
  check_radius(r);
  const SymMatrix E = annulus_energy(a, A, 0.0, r, q, radial_level);
  return 2.0 * quad_form(E, u, v) / std::pow(r, q.dim - 1);
}

double local_average(const HiggsField& a, const VVector& v, const Point& p, double s,
                     const SphereQuadrature& q, int radial_level) {
  check_unit(v, a.vdim());
  check_radius(s);
  const double I = ball_integral([&](const Point& x) { return norm2(contract(a(x), v)); }, s, q,
                                 radial_level, p);
  return std::sqrt(std::max(0.0, I) / std::pow(s, q.dim));
}

// ---------------------------------------------------------------- profiles

namespace {

VVector eigvec(const EigenDecomposition& e, int k) {
  VVector v{};
  for (int i = 0; i < e.n; ++i) v[i] = e.vectors[k][i];
  return v;
}

double dotv(const VVector& a, const VVector& b) {
  double s = 0.0;
  for (int i = 0; i < kMaxVdim; ++i) s += a[i] * b[i];
  return s;
}

// Smallest eigenvector closest to `prev` within the (numerically) degenerate
// lowest eigenspace.
VVector track(const EigenDecomposition& e, const SymMatrix& T, const VVector* prev) {
  VVector v = eigvec(e, 0);
  if (!prev) return v;
  const double tol = kDegenerateRel * std::max(T.trace(), DBL_MIN);
  VVector proj{};
  for (int k = 0; k < e.n; ++k) {
    if (e.values[k] - e.values[0] > tol) break;
    const VVector ek = eigvec(e, k);
    const double c = dotv(ek, *prev);
    for (int i = 0; i < kMaxVdim; ++i) proj[i] += c * ek[i];
  }
  const double pn = std::sqrt(dotv(proj, proj));
  if (pn > 1e-6) {
    for (double& x : proj) x /= pn;
    return proj;
  }
  if (dotv(v, *prev) < 0.0)
    for (double& x : v) x = -x;
  return v;
}

}  // namespace

RadialProfile build_profile(const SolutionPair& p, double r_min, double r_max, int samples,
                            const ProfileOptions& opt) {
  if (!(r_min > 0.0 && r_min < r_max)) throw std::invalid_argument("need 0 < r_min < r_max");
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  if (opt.angular_level < 4 || opt.radial_level < 4 || opt.annulus_level < 1)
    throw std::invalid_argument("quadrature levels too small");
  const int n = p.A.dim(), vd = p.a.vdim();
  const SphereQuadrature q = sphere_quadrature(n, opt.angular_level);

  std::vector<double> radii(samples);
  for (int j = 0; j < samples; ++j)
    radii[j] = r_min * std::pow(r_max / r_min, static_cast<double>(j) / (samples - 1));
  radii.back() = r_max;

  std::vector<SymMatrix> seg(samples), shell(samples);
  parallel_for(
      samples,
      [&](std::size_t j) {
        const double r0 = j == 0 ? 0.0 : radii[j - 1];
        const int lev = j == 0 ? opt.radial_level : opt.annulus_level;
        seg[j] = annulus_energy(p.a, p.A, r0, radii[j], q, lev);
        const simd::MomentSums s = sphere_moments(p.a, p.A, radii[j], q);
        shell[j] = from_sums(s.T, vd, 1.0);
      },
      opt.threads);

  RadialProfile prof;
  prof.dim = n;
  prof.vdim = vd;
  prof.has_matrices = true;
  prof.rows.resize(samples);
  SymMatrix E(vd);
  std::vector<EigenDecomposition> eig(samples);
  for (int j = 0; j < samples; ++j) {
    for (int c = 0; c < vd; ++c)
      for (int d = 0; d < vd; ++d) E(c, d) += seg[j](c, d);
    ProfileRow& row = prof.rows[j];
    row.r = radii[j];
    row.T = shell[j];
    row.E = E;
    row.trace_T = row.T.trace();
    const double den = std::pow(row.r, n - 2) * row.trace_T;
    if (!(den > DBL_MIN)) throw VanishingKappaError(row.r);
    row.kappa = std::sqrt(row.trace_T);
    row.N = E.trace() / den;
    eig[j] = jacobi_eigen(row.T);
    row.lambda_min = eig[j].values[0];
    row.lambda_max = eig[j].values[vd - 1];
    row.v = track(eig[j], row.T, j == 0 ? nullptr : &prof.rows[j - 1].v);
    const double kv2 = quad_form(row.T, row.v, row.v);
    row.kappa_v = std::sqrt(std::max(0.0, kv2));
    row.N_v = kv2 > kDegenerateRel * row.trace_T ? quad_form(E, row.v, row.v) / (std::pow(row.r, n - 2) * kv2)
                                                  : std::numeric_limits<double>::quiet_NaN();
  }
  prof.u_fixed = eigvec(eig.back(), vd - 1);
  prof.v_fixed = eigvec(eig.back(), 0);
  for (auto& row : prof.rows) row.P_uv = quad_form(row.T, prof.u_fixed, prof.v_fixed);
  return prof;
}

// ---------------------------------------------------------------- search

FlatRadiusReport find_flat_radius(const RadialProfile& prof, const SearchParams& P) {
  if (!(P.epsilon > 0.0 && P.epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(P.rho > 1.0)) throw std::invalid_argument("rho must exceed 1");
  if (prof.rows.empty()) throw std::invalid_argument("empty profile");
  const double eps = P.epsilon;
  const int n = prof.dim;
  FlatRadiusReport rep;
  rep.outside_small_eps_regime = eps >= 0.01;
  rep.threshold_N = std::sqrt(eps);
  rep.threshold_a = std::pow(eps, 0.25);
  rep.threshold_b = 1.0 - P.report_constant * std::pow(eps, 0.25) * std::abs(std::log(eps));
  rep.nominal_window_lo = std::pow(P.rho, 1.0 - 30.0 * std::sqrt(eps));
  rep.window_lo = std::max(rep.nominal_window_lo, prof.rows.front().r);
  rep.window_hi = P.rho;
  const double slack = 1e-12;
  auto in = [&](double r, double lo, double hi) { return r >= lo * (1 - slack) && r <= hi * (1 + slack); };

  std::vector<std::size_t> win;
  for (std::size_t i = 0; i < prof.rows.size(); ++i)
    if (in(prof.rows[i].r, rep.window_lo, rep.window_hi)) win.push_back(i);
  rep.window_samples = win.size();
  if (win.size() < P.min_samples)
    throw std::invalid_argument("profile has " + std::to_string(win.size()) +
                                " samples in the search window; need at least " +
                                std::to_string(P.min_samples));
  for (auto it = win.rbegin(); it != win.rend(); ++it)
    if (prof.rows[*it].N <= rep.threshold_N) {
      rep.found = true;
      rep.index = *it;
      break;
    }
  if (!rep.found) throw FlatRadiusNotFound(rep);

  const ProfileRow& top = prof.rows[rep.index];
  rep.radius = top.r;
  rep.sub_lo = std::pow(eps, 1.0 / (8.0 * n)) * top.r;

  // v for check (c): smallest eigenvector of T(r), or the tracked one for CSV input
  VVector v = top.v;
  if (prof.has_matrices) v = eigvec(jacobi_eigen(top.T), 0);
  rep.v = v;
  auto kv2_at = [&](const ProfileRow& row) {
    return prof.has_matrices ? quad_form(row.T, v, v) : row.kappa_v * row.kappa_v;
  };
  auto nv_at = [&](const ProfileRow& row) {
    if (!prof.has_matrices) return row.N_v;
    return quad_form(row.E, v, v) / (std::pow(row.r, n - 2) * quad_form(row.T, v, v));
  };
  const double kv_top2 = kv2_at(top);
  const bool degenerate = !(kv_top2 > kDegenerateRel * top.trace_T);

  rep.check_a = rep.check_b = true;
  rep.max_N = 0.0;
  rep.min_kappa_ratio = std::numeric_limits<double>::infinity();
  rep.max_N_v = 0.0;
  rep.min_kappa_v_ratio = std::numeric_limits<double>::infinity();
  bool c_ok = true;
  for (std::size_t i = 0; i <= rep.index; ++i) {
    const ProfileRow& row = prof.rows[i];
    if (!in(row.r, rep.sub_lo, top.r)) continue;
    ++rep.sub_samples;
    rep.max_N = std::max(rep.max_N, row.N);
    rep.min_kappa_ratio = std::min(rep.min_kappa_ratio, row.kappa / top.kappa);
    if (!(row.N < rep.threshold_a)) rep.check_a = false;
    if (!(row.kappa >= rep.threshold_b * top.kappa)) rep.check_b = false;
    if (!degenerate) {
      const double nv = nv_at(row);
      const double ratio = std::sqrt(std::max(0.0, kv2_at(row)) / kv_top2);
      rep.max_N_v = std::max(rep.max_N_v, nv);
      rep.min_kappa_v_ratio = std::min(rep.min_kappa_v_ratio, ratio);
      if (!(nv < rep.threshold_a) || !(ratio >= rep.threshold_b)) c_ok = false;
    }
  }
  rep.check_c = degenerate ? VCheck::degenerate : (c_ok ? VCheck::passed : VCheck::failed);
  std::ostringstream note;
  if (rep.window_lo > rep.nominal_window_lo)
    note << "window clipped to the profile start " << rep.window_lo << "; ";
  if (degenerate)
    note << "T(r) is degenerate along its smallest eigenvector (a(v) = 0 there); "
            "V can be cut down to the range of T; ";
  if (rep.outside_small_eps_regime) note << "epsilon >= 1/100 lies outside the small-epsilon regime; ";
  if (!prof.has_matrices) note << "check (c) uses the tracked eigenvector columns of the input; ";
  note << "checks are verified at the sample resolution only";
  rep.note = note.str();
  return rep;
}

// ---------------------------------------------------------------- CSV

void write_profile_csv(std::ostream& os, const RadialProfile& prof) {
  os << "# dim=" << prof.dim << " vdim=" << prof.vdim << "\n";
  os << "r,kappa,N,lambda_min,lambda_max,trace_T,kappa_v,N_v,P_uv\n";
  char buf[64];
  auto put = [&](double x, bool last) {
    std::snprintf(buf, sizeof buf, "%.12g", x);
    os << buf << (last ? '\n' : ',');
  };
  for (const auto& row : prof.rows) {
    put(row.r, false);
    put(row.kappa, false);
    put(row.N, false);
    put(row.lambda_min, false);
    put(row.lambda_max, false);
    put(row.trace_T, false);
    put(row.kappa_v, false);
    put(row.N_v, false);
    put(row.P_uv, true);
  }
}

RadialProfile read_profile_csv(std::istream& is) {
  RadialProfile prof;
  prof.has_matrices = false;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string tok;
      while (ss >> tok) {
        if (tok.rfind("dim=", 0) == 0) prof.dim = std::stoi(tok.substr(4));
        if (tok.rfind("vdim=", 0) == 0) prof.vdim = std::stoi(tok.substr(5));
      }
      continue;
    }
    if (!header) {
      if (line.rfind("r,kappa,N", 0) != 0) throw std::invalid_argument("not a profile CSV: " + line);
      header = true;
      continue;
    }
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
    if (v.size() != 9) throw std::invalid_argument("malformed profile row: " + line);
    ProfileRow row;
    row.r = v[0];
    row.kappa = v[1];
    row.N = v[2];
    row.lambda_min = v[3];
    row.lambda_max = v[4];
    row.trace_T = v[5];
    row.kappa_v = v[6];
    row.N_v = v[7];
    row.P_uv = v[8];
    prof.rows.push_back(row);
  }
  if (!header) throw std::invalid_argument("profile CSV has no header");
  for (std::size_t i = 1; i < prof.rows.size(); ++i)
    if (!(prof.rows[i].r > prof.rows[i - 1].r)) throw std::invalid_argument("profile radii must increase");
  return prof;
}

}  // namespace kwlab
