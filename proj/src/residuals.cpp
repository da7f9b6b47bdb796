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

#include "kwlab/residuals.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace kwlab {

namespace {

// Self-dual frame w^k and anti-self-dual frame wbar^k as (i, j, sign) pairs.
struct FramePair {
  int i, j;
  double s;
};
constexpr FramePair kSd[3][2] = {{{0, 1, 1}, {2, 3, 1}}, {{0, 2, 1}, {3, 1, 1}}, {{0, 3, 1}, {1, 2, 1}}};
constexpr FramePair kAsd[3][2] = {
    {{0, 1, 1}, {2, 3, -1}}, {{0, 2, 1}, {3, 1, -1}}, {{0, 3, 1}, {1, 2, -1}}};

// w^k_{mu nu} as a full antisymmetric matrix entry.
double frame(int k, int mu, int nu) {
  for (const auto& f : kSd[k]) {
    if (f.i == mu && f.j == nu) return f.s;
    if (f.i == nu && f.j == mu) return -f.s;
  }
  return 0.0;
}

const double kVwScale = std::pow(2.0, -0.25);

void require4(int dim, const char* what) {
  if (dim != 4) throw std::invalid_argument(std::string(what) + ": requires n = 4");
}

}  // namespace

std::string equation_name(Equation eq, double tau) {
  switch (eq) {
    case Equation::eq11: return "eq11";
    case Equation::kw: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "kw(%.6g)", tau);
      return buf;
    }
    case Equation::vw: return "vw";
    case Equation::kw_half: return "kw_half";
    case Equation::monopole: return "monopole";
  }
  return "?";
}

LieVector self_dual_component(const TwoForm& w, int k) {
  LieVector s;
  for (const auto& f : kSd[k]) s += f.s * w(f.i, f.j);
  return 0.5 * s;
}

LieVector anti_self_dual_component(const TwoForm& w, int k) {
  LieVector s;
  for (const auto& f : kAsd[k]) s += f.s * w(f.i, f.j);
  return 0.5 * s;
}

HiggsValue residual_eq11(const SolutionPair& p, const Point& x) {
  const HiggsJet a = p.a.jet(x);
  HiggsValue r = covariant_laplacian(a, p.A.jet(x));
  const int vd = a.value.vdim;
  for (int b = 0; b < vd; ++b)
    for (int c = 0; c < vd; ++c)
      r[b] += commutator(a.value[c], commutator(a.value[b], a.value[c]));
  return r;
}

double KwResidual::max_norm() const {
  return std::max({kwlab::max_norm(plus), kwlab::max_norm(minus), norm(gauge)});
}

KwResidual residual_kw(const SolutionPair& p, double tau, const Point& x) {
  require4(p.A.dim(), "residual_kw");
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::domain_error("residual_kw: tau must lie in [0, 1]");
  if (p.a.vdim() != 4) throw std::invalid_argument("residual_kw: a must be a 1-form (vdim 4)");
  const ConnectionJet A = p.A.jet(x);
  const HiggsJet a = p.a.jet(x);
  const TwoForm FA = curvature(A) - wedge_form(a.value);
  const TwoForm dA = exterior_covariant(a, A);
  const auto [fp, fm] = hodge_split(FA);
  const auto [dp, dm] = hodge_split(dA);
  KwResidual r;
  r.plus = (1.0 - tau) * fp - tau * dp;
  r.minus = tau * fm + (1.0 - tau) * dm;
  r.gauge = covariant_divergence(a, A);
  return r;
}

VafaWittenFields vw_split(const SolutionPair& p) {
  require4(p.A.dim(), "vw_split");
  if (p.a.vdim() != 4) throw std::invalid_argument("vw_split: a must have vdim 4");
  const HiggsField a = p.a;
  const double s = kVwScale;
  auto pick_alpha = [s](const HiggsValue& h) {
    HiggsValue o(3);
    o[0] = s * h[2];
    o[1] = -s * h[1];
    o[2] = s * h[0];
    return o;
  };
  auto pick_phi = [s](const HiggsValue& h) {
    HiggsValue o(1);
    o[0] = s * h[3];
    return o;
  };
  VafaWittenFields f;
  f.A = p.A;
  f.alpha = HiggsField::analytic(
      4, 3, [a, pick_alpha](const Point& x) { return pick_alpha(a(x)); },
      [a, pick_alpha](const Point& x) {
        const HiggsJet j = a.jet(x);
        HiggsJet o;
        o.value = pick_alpha(j.value);
        for (int m = 0; m < 4; ++m) o.grad[m] = pick_alpha(j.grad[m]);
        o.laplacian = pick_alpha(j.laplacian);
        return o;
      });
  f.phi = HiggsField::analytic(
      4, 1, [a, pick_phi](const Point& x) { return pick_phi(a(x)); },
      [a, pick_phi](const Point& x) {
        const HiggsJet j = a.jet(x);
        HiggsJet o;
        o.value = pick_phi(j.value);
        for (int m = 0; m < 4; ++m) o.grad[m] = pick_phi(j.grad[m]);
        o.laplacian = pick_phi(j.laplacian);
        return o;
      });
  return f;
}

double VwResidual::max_norm() const {
  double m = 0.0;
  for (const auto& v : curvature) m = std::max(m, norm(v));
  for (const auto& v : one_form) m = std::max(m, norm(v));
  return m;
}

VwResidual residual_vw(const VafaWittenFields& f, const Point& x) {
  require4(f.A.dim(), "residual_vw");
  if (f.alpha.vdim() != 3 || f.phi.vdim() != 1)
    throw std::invalid_argument("residual_vw: alpha needs vdim 3 and phi vdim 1");
  const ConnectionJet A = f.A.jet(x);
  const HiggsJet al = f.alpha.jet(x);
  const HiggsJet ph = f.phi.jet(x);
  const auto gal = covariant_gradient(al, A);
  const auto gph = covariant_gradient(ph, A);
  const TwoForm F = curvature(A);
  const double c1 = 1.0 / (2.0 * std::sqrt(2.0)), c2 = 1.0 / std::sqrt(2.0);
  VwResidual r;
  for (int k = 0; k < 3; ++k) {
    LieVector q = self_dual_component(F, k);
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const int e = levi_civita3(k, b, c);
        if (e != 0) q -= (c1 * e) * commutator(al.value[b], al.value[c]);
      }
    q -= c2 * commutator(al.value[k], ph.value[0]);
    r.curvature[k] = q;
  }
  for (int nu = 0; nu < 4; ++nu) {
    LieVector s = gph[nu][0];
    for (int k = 0; k < 3; ++k)
      for (int mu = 0; mu < 4; ++mu) {
        const double w = frame(k, mu, nu);
        if (w != 0.0) s += w * gal[mu][k];
      }
    r.one_form[nu] = s;
  }
  return r;
}

TwoForm residual_monopole(const MonopolePair& m, const Point& x) {
  if (m.connection.dim() != 3) throw std::invalid_argument("residual_monopole: requires n = 3");
  const ConnectionJet A = m.connection.jet(x);
  const auto g = covariant_gradient(m.higgs.jet(x), A);
  TwoForm r = curvature(A);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      LieVector s = r(i, j);
      for (int k = 0; k < 3; ++k) {
        const int e = levi_civita3(i, j, k);
        if (e != 0) s -= static_cast<double>(e) * g[k][0];
      }
      r.set(i, j, s);
    }
  return r;
}

namespace {

struct VJet {
  int dim;
  HiggsValue a;                  // a
  LieVector b;                   // a(v)
  std::array<LieVector, 4> gb;   // grad_alpha a(v)
  std::array<HiggsValue, 4> ga;  // grad_alpha a
  ConnectionJet A;
};

VJet vjet(const SolutionPair& p, const VVector& v, const Point& x) {
  VJet j;
  j.dim = p.A.dim();
  j.A = p.A.jet(x);
  const HiggsJet a = p.a.jet(x);
  j.a = a.value;
  j.b = contract(a.value, v);
  j.ga = covariant_gradient(a, j.A);
  for (int al = 0; al < j.dim; ++al) j.gb[al] = contract(j.ga[al], v);
  return j;
}

double grad_b2(const VJet& j) {
  double s = 0.0;
  for (int al = 0; al < j.dim; ++al) s += norm2(j.gb[al]);
  return s;
}

double comm_b2(const VJet& j) {
  double s = 0.0;
  for (int c = 0; c < j.a.vdim; ++c) s += norm2(commutator(j.a[c], j.b));
  return s;
}

void check_unit(const VVector& v, int vdim) {
  double s = 0.0;
  for (int c = 0; c < vdim; ++c) s += v[c] * v[c];
  if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("v must be a unit vector");
}

}  // namespace

StressTensor stress_tensor(const SolutionPair& p, const VVector& v, const Point& x) {
  check_unit(v, p.a.vdim());
  const VJet j = vjet(p, v, x);
  StressTensor S;
  S.dim = j.dim;
  const double tr = grad_b2(j) + comm_b2(j);
  for (int a = 0; a < j.dim; ++a)
    for (int b = 0; b < j.dim; ++b)
      S.s[a][b] = inner(j.gb[a], j.gb[b]) - (a == b ? 0.5 * tr : 0.0);
  return S;
}

std::array<double, 4> stress_divergence_source(const SolutionPair& p, const VVector& v,
                                               const Point& x) {
  check_unit(v, p.a.vdim());
  const VJet j = vjet(p, v, x);
  const TwoForm F = curvature(j.A);
  std::array<double, 4> out{};
  for (int al = 0; al < j.dim; ++al) {
    double s = 0.0;
    for (int be = 0; be < j.dim; ++be) s += inner(F(be, al), commutator(j.b, j.gb[be]));
    for (int c = 0; c < j.a.vdim; ++c)
      s -= inner(commutator(j.ga[al][c], j.b), commutator(j.a[c], j.b));
    out[al] = s;
  }
  return out;
}

PohozaevResult pohozaev_check(const SolutionPair& p, const VVector& v, double r,
                              const SphereQuadrature& q, int radial_level) {
  if (!(r > 0.0)) throw std::invalid_argument("pohozaev_check: r must be positive");
  check_unit(v, p.a.vdim());
  const int n = p.A.dim();
  auto boundary = [&](const Point& x) {
    const VJet j = vjet(p, v, x);
    LieVector gr;
    for (int al = 0; al < n; ++al) gr += (x[al] / r) * j.gb[al];
    return norm2(gr) - 0.5 * grad_b2(j) - 0.5 * comm_b2(j);
  };
  auto bulk = [&](const Point& x) {
    const VJet j = vjet(p, v, x);
    return 0.5 * (n - 2) * grad_b2(j) + 0.5 * n * comm_b2(j);
  };
  auto source = [&](const Point& x) {
    const auto s = stress_divergence_source(p, v, x);
    double t = 0.0;
    for (int al = 0; al < n; ++al) t += x[al] * s[al];
    return t;
  };
  PohozaevResult res;
  const double interior = ball_integral(bulk, r, q, radial_level);
  res.lhs = r * shell_integral(boundary, r, q) + interior;
  res.rhs = ball_integral(source, r, q, radial_level);
  // the bulk term is a positive energy, so it sets the scale when both sides cancel
  const double scale = std::max({std::abs(res.lhs), std::abs(res.rhs), interior});
  res.gap = scale > 1e-300 ? std::abs(res.lhs - res.rhs) / scale : 0.0;
  return res;
}

std::vector<Point> standard_points(int dim, std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Point> pts;
  pts.reserve(count);
  while (pts.size() < count) {
    Point x{};
    double r2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      x[k] = u(rng);
      r2 += x[k] * x[k];
    }
    if (r2 <= radius * radius) pts.push_back(x);
  }
  return pts;
}

namespace {

void finish(ResidualReport& rep) {
  double s = 0.0;
  rep.max = 0.0;
  for (double v : rep.norms) {
    rep.max = std::max(rep.max, v);
    s += v * v;
  }
  rep.rms = rep.norms.empty() ? 0.0 : std::sqrt(s / rep.norms.size());
}

void add_row(ResidualReport& rep, const Point& x, std::string comp, double nrm, double& pmax) {
  rep.rows.push_back({x, std::move(comp), nrm});
  pmax = std::max(pmax, nrm);
}

const char* kPairNames[6] = {"12", "13", "14", "23", "24", "34"};

void add_form(ResidualReport& rep, const Point& x, const std::string& prefix, const TwoForm& w,
              double& pmax) {
  int k = 0;
  for (int a = 0; a < w.dim; ++a)
    for (int b = a + 1; b < w.dim; ++b, ++k) {
      const int idx = w.dim == 4 ? k : (a == 0 ? b - 1 : 3);
      add_row(rep, x, prefix + kPairNames[idx], norm(w(a, b)), pmax);
    }
}

}  // namespace

ResidualReport residual_report(const SolutionPair& p, Equation eq, const std::vector<Point>& pts,
                               double tau) {
  ResidualReport rep;
  rep.dim = p.A.dim();
  rep.equation = equation_name(eq, tau);
  rep.points = pts;
  VafaWittenFields vw;
  if (eq == Equation::vw) vw = vw_split(p);
  for (const Point& x : pts) {
    double pmax = 0.0;
    switch (eq) {
      case Equation::eq11: {
        const HiggsValue r = residual_eq11(p, x);
        for (int c = 0; c < r.vdim; ++c) add_row(rep, x, "a" + std::to_string(c + 1), norm(r[c]), pmax);
        break;
      }
      case Equation::kw:
      case Equation::kw_half: {
        const KwResidual r = residual_kw(p, eq == Equation::kw_half ? 0.5 : tau, x);
        add_form(rep, x, "plus", r.plus, pmax);
        add_form(rep, x, "minus", r.minus, pmax);
        add_row(rep, x, "gauge", norm(r.gauge), pmax);
        break;
      }
      case Equation::vw: {
        const VwResidual r = residual_vw(vw, x);
        for (int k = 0; k < 3; ++k) add_row(rep, x, "F" + std::to_string(k + 1), norm(r.curvature[k]), pmax);
        for (int m = 0; m < 4; ++m) add_row(rep, x, "d" + std::to_string(m + 1), norm(r.one_form[m]), pmax);
        break;
      }
      case Equation::monopole:
        throw std::invalid_argument("use monopole_report for the monopole equation");
    }
    rep.norms.push_back(pmax);
  }
  finish(rep);
  return rep;
}

ResidualReport monopole_report(const MonopolePair& m, const std::vector<Point>& pts) {
  ResidualReport rep;
  rep.dim = 3;
  rep.equation = equation_name(Equation::monopole);
  rep.points = pts;
  for (const Point& x : pts) {
    double pmax = 0.0;
    add_form(rep, x, "F", residual_monopole(m, x), pmax);
    rep.norms.push_back(pmax);
  }
  finish(rep);
  return rep;
}

std::vector<ResidualReport> verify_claims(const SolutionPair& p, const std::vector<Point>& pts) {
  std::vector<ResidualReport> out;
  if (p.claims.master) out.push_back(residual_report(p, Equation::eq11, pts));
  for (double t : p.claims.kw_tau) out.push_back(residual_report(p, Equation::kw, pts, t));
  if (p.claims.vafa_witten) out.push_back(residual_report(p, Equation::vw, pts));
  if (p.claims.wedge_zero || p.claims.covariantly_constant) {
    ResidualReport w, g;
    w.dim = g.dim = p.A.dim();
    w.equation = "wedge";
    g.equation = "parallel";
    w.points = g.points = pts;
    for (const Point& x : pts) {
      const HiggsJet a = p.a.jet(x);
      double pw = 0.0, pg = 0.0;
      add_row(w, x, "wedge", std::sqrt(wedge_square(a.value)), pw);
      w.norms.push_back(pw);
      const auto ga = covariant_gradient(a, p.A.jet(x));
      for (int al = 0; al < p.A.dim(); ++al) add_row(g, x, "grad" + std::to_string(al + 1), norm(ga[al]), pg);
      g.norms.push_back(pg);
    }
    finish(w);
    finish(g);
    if (p.claims.wedge_zero) out.push_back(std::move(w));
    if (p.claims.covariantly_constant) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace kwlab
