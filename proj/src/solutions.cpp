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

#include "kwlab/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kwlab/errors.hpp"
#include "kwlab/residuals.hpp"

namespace kwlab {

bool ClaimedProperties::claims_kw(double tau) const {
  return std::any_of(kw_tau.begin(), kw_tau.end(),
                     [tau](double t) { return std::abs(t - tau) < 1e-15; });
}

namespace {

// The monopole profiles are written through u = 2 rho:
//   Phi^a = -y^a H(rho),      H = 2 g(u),  g(u) = (coth u - 1/u)/u
//   A^a_i = eps_aij y_j K(rho), K = 2 q(u),  q(u) = (1 - u/sinh u)/u^2
// Below kSeriesCut the closed forms lose digits to cancellation, so Taylor
// series in u^2 are used instead.
constexpr double kSeriesCut = 0.2;

constexpr double kG[] = {1.0 / 3.0,         -1.0 / 45.0,       2.0 / 945.0,
                         -1.0 / 4725.0,     2.0 / 93555.0,     -1382.0 / 638512875.0,
                         4.0 / 18243225.0};
constexpr double kQ[] = {1.0 / 6.0,          -7.0 / 360.0,         31.0 / 15120.0,
                         -127.0 / 604800.0,  73.0 / 3421440.0,     -1414477.0 / 653837184000.0,
                         8191.0 / 37362124800.0};
constexpr int kTerms = 7;

struct Profile {
  double f;    // g or q
  double d1u;  // f'(u) / u
  double lap;  // f''(u) + 4 f'(u)/u
};

// Sum_n c_n u^{2n} and the derived combinations.
Profile series(const double* c, double u) {
  const double u2 = u * u;
  Profile p{0.0, 0.0, 0.0};
  double pw = 1.0;  // u^{2n}
  double pw1 = 1.0; // u^{2n-2}
  for (int n = 0; n < kTerms; ++n) {
    p.f += c[n] * pw;
    if (n > 0) {
      p.d1u += 2.0 * n * c[n] * pw1;
      p.lap += 2.0 * n * (2.0 * n + 3.0) * c[n] * pw1;
      pw1 *= u2;
    }
    pw *= u2;
  }
  return p;
}

Profile g_profile(double u) {
  if (u < kSeriesCut) return series(kG, u);
  const double ch = 1.0 / std::tanh(u);
  const double cs2 = 1.0 / (std::sinh(u) * std::sinh(u));
  const double u2 = u * u, u3 = u2 * u, u4 = u2 * u2;
  const double g = ch / u - 1.0 / u2;
  const double g1 = -cs2 / u - ch / u2 + 2.0 / u3;
  const double g2 = 2.0 * cs2 * ch / u + 2.0 * cs2 / u2 + 2.0 * ch / u3 - 6.0 / u4;
  return {g, g1 / u, g2 + 4.0 * g1 / u};
}

Profile q_profile(double u) {
  if (u < kSeriesCut) return series(kQ, u);
  const double sh = std::sinh(u), ch = std::cosh(u);
  const double u2 = u * u, u3 = u2 * u;
  const double q = (1.0 - u / sh) / u2;
  const double q1 = -(sh - u * ch) / (sh * sh) / u2 - 2.0 * (1.0 - u / sh) / u3;
  return {q, q1 / u, 0.0};
}

double radius3(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

struct MonopoleJet {
  LieVector phi;
  std::array<LieVector, 3> dphi;  // d_i Phi
  LieVector lap_phi;
  std::array<LieVector, 3> A;
  std::array<std::array<LieVector, 3>, 3> dA;  // dA[k][i] = d_k A_i
};

MonopoleJet monopole_jet(const Point& y) {
  const double rho = radius3(y);
  const double u = 2.0 * rho;
  const Profile g = g_profile(u);
  const Profile q = q_profile(u);
  const double H = 2.0 * g.f, H1 = 8.0 * g.d1u, HL = 8.0 * g.lap;
  const double K = 2.0 * q.f, K1 = 8.0 * q.d1u;
  MonopoleJet j;
  for (int a = 0; a < 3; ++a) {
    j.phi[a] = -y[a] * H;
    j.lap_phi[a] = -y[a] * HL;
    for (int i = 0; i < 3; ++i) j.dphi[i][a] = -(a == i ? H : 0.0) - y[a] * y[i] * H1;
  }
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) {
      double s = 0.0;
      for (int jj = 0; jj < 3; ++jj) s += levi_civita3(a, i, jj) * y[jj];
      j.A[i][a] = s * K;
      for (int k = 0; k < 3; ++k) j.dA[k][i][a] = levi_civita3(a, i, k) * K + s * y[k] * K1;
    }
  return j;
}

LieVector monopole_phi(const Point& y) {
  const Profile g = g_profile(2.0 * radius3(y));
  return {-y[0] * 2.0 * g.f, -y[1] * 2.0 * g.f, -y[2] * 2.0 * g.f};
}

std::array<LieVector, 4> monopole_A(const Point& y) {
  const double K = 2.0 * q_profile(2.0 * radius3(y)).f;
  std::array<LieVector, 4> A{};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) {
      double s = 0.0;
      for (int jj = 0; jj < 3; ++jj) s += levi_civita3(a, i, jj) * y[jj];
      A[i][a] = s * K;
    }
  return A;
}

Point drop4(const Point& x) { return {x[0], x[1], x[2], 0.0}; }

HiggsValue single(int vdim, int c, const LieVector& v) {
  HiggsValue h(vdim);
  h[c] = v;
  return h;
}

double max_kw_half(const SolutionPair& p) {
  double m = 0.0;
  for (const Point& x : standard_points(4, 12, 3.0)) m = std::max(m, residual_kw(p, 0.5, x).max_norm());
  return m;
}

SolutionPair build_lift(const MonopolePair& m, int sign) {
  if (m.connection.dim() != 3 || m.higgs.dim() != 3 || m.higgs.vdim() != 1)
    throw std::invalid_argument("lift_to_r4: expects a monopole on R^3");
  const double s = sign;
  const GaugeConnection mA = m.connection;
  const HiggsField phi = m.higgs;
  SolutionPair p;
  p.label = "ps-lift";
  p.A = GaugeConnection::analytic(
      4,
      [mA](const Point& x) {
        auto v = mA(drop4(x));
        v[3] = LieVector{};
        return v;
      },
      [mA](const Point& x) {
        const ConnectionJet j = mA.jet(drop4(x));
        ConnectionJet c;
        c.dim = 4;
        for (int i = 0; i < 3; ++i) {
          c.A[i] = j.A[i];
          for (int k = 0; k < 3; ++k) c.dA[k][i] = j.dA[k][i];
        }
        return c;
      });
  p.a = HiggsField::analytic(
      4, 4, [phi, s](const Point& x) { return single(4, 3, s * phi(drop4(x))[0]); },
      [phi, s](const Point& x) {
        const HiggsJet j = phi.jet(drop4(x));
        HiggsJet h;
        h.value = single(4, 3, s * j.value[0]);
        h.grad.fill(HiggsValue(4));
        for (int i = 0; i < 3; ++i) h.grad[i][3] = s * j.grad[i][0];
        h.laplacian = single(4, 3, s * j.laplacian[0]);
        return h;
      });
  p.claims.master = true;
  p.claims.kw_tau = {0.5};
  p.claims.wedge_zero = true;
  return p;
}

void check_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("tau must lie in (0, 1)");
}

// (A - shift a, scale a), with a read as a 1-form.
SolutionPair shift_and_scale(const SolutionPair& p, double shift, double scale) {
  if (p.a.vdim() != 4 || p.A.dim() != 4)
    throw std::invalid_argument("tau transform needs a 1-form on R^4 (vdim 4)");
  SolutionPair out;
  const GaugeConnection A = p.A;
  const HiggsField a = p.a;
  out.A = GaugeConnection::analytic(
      4,
      [A, a, shift](const Point& x) {
        auto v = A(x);
        const HiggsValue h = a(x);
        for (int m = 0; m < 4; ++m) v[m] -= shift * h[m];
        return v;
      },
      [A, a, shift](const Point& x) {
        ConnectionJet c = A.jet(x);
        const HiggsJet h = a.jet(x);
        for (int m = 0; m < 4; ++m) {
          c.A[m] -= shift * h.value[m];
          for (int b = 0; b < 4; ++b) c.dA[b][m] -= shift * h.grad[b][m];
        }
        return c;
      });
  out.a = HiggsField::analytic(
      4, 4, [a, scale](const Point& x) { return scale * a(x); },
      [a, scale](const Point& x) {
        HiggsJet h = a.jet(x);
        h.value *= scale;
        for (auto& g : h.grad) g *= scale;
        h.laplacian *= scale;
        return h;
      });
  out.claims.master = true;
  out.claims.wedge_zero = true;
  return out;
}

}  // namespace

double ps_higgs_magnitude(double rho) {
  const double u = 2.0 * rho;
  return u * g_profile(u).f;
}

MonopolePair ps_monopole() {
  MonopolePair m;
  m.connection = GaugeConnection::analytic(
      3, [](const Point& x) { return monopole_A(x); },
      [](const Point& x) {
        const MonopoleJet j = monopole_jet(x);
        ConnectionJet c;
        c.dim = 3;
        for (int i = 0; i < 3; ++i) {
          c.A[i] = j.A[i];
          for (int k = 0; k < 3; ++k) c.dA[k][i] = j.dA[k][i];
        }
        return c;
      });
  m.higgs = HiggsField::analytic(
      3, 1, [](const Point& x) { return single(1, 0, monopole_phi(x)); },
      [](const Point& x) {
        const MonopoleJet j = monopole_jet(x);
        HiggsJet h;
        h.value = single(1, 0, j.phi);
        h.grad.fill(HiggsValue(1));
        for (int i = 0; i < 3; ++i) h.grad[i][0] = j.dphi[i];
        h.laplacian = single(1, 0, j.lap_phi);
        return h;
      });
  return m;
}

SolutionPair lift_to_r4(const MonopolePair& m, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("lift sign must be +1 or -1");
  SolutionPair p = build_lift(m, sign);
  const double res = max_kw_half(p);
  if (!(res < 1e-8))
    throw ConventionError("monopole lift with sign " + std::to_string(sign) +
                          " does not solve the tau = 1/2 system (residual " +
                          std::to_string(res) + ")");
  return p;
}

SolutionPair lift_to_r4(const MonopolePair& m) {
  for (int sign : {1, -1}) {
    SolutionPair p = build_lift(m, sign);
    if (max_kw_half(p) < 1e-8) return p;
  }
  throw ConventionError("neither sign of the monopole lift solves the tau = 1/2 system");
}

SolutionPair commuting_mode(ModeKind kind, const VVector& v, const LieVector& sigma, int dim,
                            int vdim) {
  if (std::abs(norm(sigma) - 1.0) > 1e-12) throw std::invalid_argument("sigma must be a unit vector");
  double vv = 0.0;
  for (int c = 0; c < vdim; ++c) vv += v[c] * v[c];
  for (int c = vdim; c < kMaxVdim; ++c)
    if (v[c] != 0.0) throw std::invalid_argument("v has components beyond vdim");
  if (kind != ModeKind::linear_selfdual && std::abs(vv - 1.0) > 1e-12)
    throw std::invalid_argument("v must be a unit vector");
  if (kind == ModeKind::linear_selfdual && (dim != 4 || vdim != 4))
    throw std::invalid_argument("linear_selfdual mode lives on R^4 with vdim 4");

  SolutionPair p;
  p.A = GaugeConnection::product(dim);
  p.claims.master = true;
  p.claims.wedge_zero = true;

  // a_c(x) = (M x + b)_c sigma, with M and b per kind
  std::array<std::array<double, 4>, 4> M{};
  VVector b{};
  switch (kind) {
    case ModeKind::constant:
      p.label = "const-mode";
      b = v;
      p.claims.covariantly_constant = true;
      break;
    case ModeKind::linear_selfdual:
      p.label = "linear-mode";
      M[0][1] = -1.0;
      M[1][0] = 1.0;
      M[2][3] = -1.0;
      M[3][2] = 1.0;
      break;
    case ModeKind::radial_harmonic:
      p.label = "radial-harmonic";
      for (int c = 0; c < vdim; ++c)
        for (int k = 0; k < dim; ++k) M[c][k] = v[c] * v[k];
      break;
  }
  auto value = [M, b, sigma, vdim, dim](const Point& x) {
    HiggsValue h(vdim);
    for (int c = 0; c < vdim; ++c) {
      double s = b[c];
      for (int k = 0; k < dim; ++k) s += M[c][k] * x[k];
      h[c] = s * sigma;
    }
    return h;
  };
  p.a = HiggsField::analytic(dim, vdim, value, [M, sigma, vdim, value](const Point& x) {
    HiggsJet j;
    j.value = value(x);
    j.grad.fill(HiggsValue(vdim));
    for (int k = 0; k < 4; ++k)
      for (int c = 0; c < vdim; ++c) j.grad[k][c] = M[c][k] * sigma;
    j.laplacian = HiggsValue(vdim);
    return j;
  });
  // d_A a vanishes for the constant mode and is self-dual for the linear one
  if (dim == 4 && vdim == 4 && kind == ModeKind::constant) p.claims.kw_tau = {0.0, 0.5, 1.0};
  if (kind == ModeKind::linear_selfdual) p.claims.kw_tau = {0.0};
  p.claims.vafa_witten = p.claims.claims_kw(0.0);
  return p;
}

TauMap tau_coefficients(double tau, TauCoefficients kind) {
  check_tau(tau);
  const double num1 = 2.0 * tau - 1.0;
  const double num2 = 1.0 - 2.0 * tau + 2.0 * tau * tau;
  if (kind == TauCoefficients::printed) {
    const double den = tau * (tau - 1.0);
    return {num1 / den, num2 / den};
  }
  const double den = 2.0 * tau * (1.0 - tau);
  return {num1 / den, num2 / den};
}

SolutionPair tau_transform(const SolutionPair& p, double tau, TauCoefficients kind) {
  check_tau(tau);
  if (!p.claims.wedge_zero || !p.claims.claims_kw(tau))
    throw std::invalid_argument("tau_transform: input must claim a^a = 0 and the tau system");
  const TauMap c = tau_coefficients(tau, kind);
  SolutionPair out = shift_and_scale(p, c.shift, c.scale);
  out.label = p.label + "@tau=1/2";
  if (kind == TauCoefficients::consistent) out.claims.kw_tau = {0.5};
  else out.claims.master = false;  // the printed normalization makes no claim
  return out;
}

SolutionPair tau_transform_inverse(const SolutionPair& p, double tau, TauCoefficients kind) {
  check_tau(tau);
  if (!p.claims.wedge_zero || !p.claims.claims_kw(0.5))
    throw std::invalid_argument("tau_transform_inverse: input must claim a^a = 0 and tau = 1/2");
  const TauMap c = tau_coefficients(tau, kind);
  // a = a_hat / scale, A = A_hat + shift a
  SolutionPair out = shift_and_scale(p, -c.shift / c.scale, 1.0 / c.scale);
  out.label = p.label + "@tau";
  if (kind == TauCoefficients::consistent) out.claims.kw_tau = {tau};
  else out.claims.master = false;
  return out;
}

SolutionPair abelian_pair(const LinearOneForm& alpha, const LieVector& sigma, const VVector& c) {
  if (std::abs(norm(sigma) - 1.0) > 1e-12) throw std::invalid_argument("sigma must be a unit vector");
  // (d alpha)^+ components along dx12 + dx34, dx13 + dx42, dx14 + dx23
  const double sd[3] = {alpha.d(0, 1) + alpha.d(2, 3), alpha.d(0, 2) + alpha.d(3, 1),
                        alpha.d(0, 3) + alpha.d(1, 2)};
  for (double s : sd)
    if (std::abs(s) > 1e-12) throw std::invalid_argument("abelian_pair: d alpha is not anti-self-dual");
  SolutionPair p;
  p.label = "abelian";
  auto A_of = [alpha, sigma](const Point& x) {
    std::array<LieVector, 4> A{};
    for (int m = 0; m < 4; ++m) {
      double s = alpha.constant[m];
      for (int k = 0; k < 4; ++k) s += alpha.linear[m][k] * x[k];
      A[m] = s * sigma;
    }
    return A;
  };
  p.A = GaugeConnection::analytic(4, A_of, [alpha, sigma, A_of](const Point& x) {
    ConnectionJet j;
    j.dim = 4;
    j.A = A_of(x);
    for (int b = 0; b < 4; ++b)
      for (int m = 0; m < 4; ++m) j.dA[b][m] = alpha.linear[m][b] * sigma;
    return j;
  });
  HiggsValue h(4);
  for (int m = 0; m < 4; ++m) h[m] = c[m] * sigma;
  p.a = HiggsField::analytic(
      4, 4, [h](const Point&) { return h; },
      [h](const Point&) {
        HiggsJet j;
        j.value = h;
        j.grad.fill(HiggsValue(4));
        j.laplacian = HiggsValue(4);
        return j;
      });
  p.claims.master = true;
  p.claims.kw_tau = {0.0};
  p.claims.vafa_witten = true;
  p.claims.wedge_zero = true;
  p.claims.covariantly_constant = true;
  return p;
}

std::vector<std::string> registry_labels() {
  return {"ps-lift", "const-mode", "linear-mode", "abelian", "tau-quarter"};
}

std::string registry_description(const std::string& label) {
  if (label == "ps-lift") return "charge-one monopole pulled back to R^4, a = Phi dx4 (tau = 1/2)";
  if (label == "const-mode") return "product connection, constant a = e1 (x) e1";
  if (label == "linear-mode") return "product connection, a = s e1 with ds self-dual (N = 1)";
  if (label == "abelian") return "A = alpha e3 with anti-self-dual d alpha, constant a along e3 (tau = 0)";
  if (label == "tau-quarter") return "ps-lift mapped to a tau = 1/4 solution by the inverse tau map";
  throw std::invalid_argument("unknown solution label: " + label);
}

SolutionPair make_solution(const std::string& label) {
  if (label == "ps-lift") return lift_to_r4(ps_monopole());
  if (label == "const-mode")
    return commuting_mode(ModeKind::constant, {1, 0, 0, 0}, {1, 0, 0});
  if (label == "linear-mode")
    return commuting_mode(ModeKind::linear_selfdual, {1, 0, 0, 0}, {1, 0, 0});
  if (label == "abelian") {
    LinearOneForm al;
    al.linear[0][1] = -1.0;
    al.linear[1][0] = 1.0;
    al.linear[2][3] = 1.0;
    al.linear[3][2] = -1.0;
    return abelian_pair(al, {0, 0, 1}, {0.6, 0.0, 0.8, 0.0});
  }
  if (label == "tau-quarter") {
    SolutionPair p = tau_transform_inverse(lift_to_r4(ps_monopole()), 0.25);
    p.label = "tau-quarter";
    return p;
  }
  throw std::invalid_argument("unknown solution label: " + label);
}

}  // namespace kwlab
