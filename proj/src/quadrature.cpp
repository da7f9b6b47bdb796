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

#include "kwlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kwlab {

GaussLegendre gauss_legendre(int m, double a, double b) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  GaussLegendre g;
  g.x.resize(m);
  g.w.resize(m);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    g.x[i] = mid - half * z;
    g.x[m - 1 - i] = mid + half * z;
    g.w[i] = g.w[m - 1 - i] = half * w;
  }
  return g;
}

double unit_sphere_measure(int n) {
  if (n == 3) return 4.0 * std::numbers::pi;
  if (n == 4) return 2.0 * std::numbers::pi * std::numbers::pi;
  throw std::invalid_argument("unit_sphere_measure: n must be 3 or 4");
}

double SphereQuadrature::measure() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

namespace {

// int_0^pi sin^a cos^b
double polar_moment(int a, int b) {
  if (b % 2) return 0.0;
  return std::exp(std::lgamma(0.5 * (a + 1)) + std::lgamma(0.5 * (b + 1)) - std::lgamma(0.5 * (a + b) + 1.0));
}

// int_0^2pi cos^a sin^b
double azimuth_moment(int a, int b) {
  if (a % 2 || b % 2) return 0.0;
  return 2.0 * polar_moment(a, b);
}

// Largest D such that every monomial of total degree <= D integrates to within
// 1e-11. The rule is a product, so each monomial factors into one-dimensional sums.
int exact_degree(int n, const GaussLegendre& th, const std::vector<double>& w1, const std::vector<double>& w2,
                 int nphi) {
  const int top = 2 * static_cast<int>(th.x.size()) + 2;
  const int m = top + 3;
  auto table = [&](const std::vector<double>& w) {
    std::vector<double> t(static_cast<std::size_t>(m) * m, 0.0);
    for (std::size_t i = 0; i < th.x.size(); ++i) {
      const double s = std::sin(th.x[i]), c = std::cos(th.x[i]);
      double sa = w[i];
      for (int a = 0; a < m; ++a, sa *= s) {
        double v = sa;
        for (int b = 0; b < m; ++b, v *= c) t[a * m + b] += v;
      }
    }
    return t;
  };
  const std::vector<double> P1 = table(w1), P2 = table(w2);
  std::vector<double> Az(static_cast<std::size_t>(m) * m, 0.0);
  const double wphi = 2.0 * std::numbers::pi / nphi;
  for (int k = 0; k < nphi; ++k) {
    const double c = std::cos(k * wphi), s = std::sin(k * wphi);
    double ca = wphi;
    for (int a = 0; a < m; ++a, ca *= c) {
      double v = ca;
      for (int b = 0; b < m; ++b, v *= s) Az[a * m + b] += v;
    }
  }
  // Q = P2[2 + a1 + a2 + a3][a4] P1[1 + a1 + a2][a3] Az[a1][a2] (n = 4); drop P2 for n = 3
  auto error = [&](int a1, int a2, int a3, int a4) {
    double q = P1[(1 + a1 + a2) * m + a3] * Az[a1 * m + a2];
    double e = polar_moment(1 + a1 + a2, a3) * azimuth_moment(a1, a2);
    if (n == 4) {
      q *= P2[(2 + a1 + a2 + a3) * m + a4];
      e *= polar_moment(2 + a1 + a2 + a3, a4);
    }
    return std::abs(q - e);
  };
  int best = -1;
  for (int D = 0; D <= top - 3; ++D) {
    double worst = 0.0;
    for (int a1 = 0; a1 <= D; ++a1)
      for (int a2 = 0; a1 + a2 <= D; ++a2) {
        if (n == 3) {
          worst = std::max(worst, error(a1, a2, D - a1 - a2, 0));
          continue;
        }
        for (int a3 = 0; a1 + a2 + a3 <= D; ++a3) worst = std::max(worst, error(a1, a2, a3, D - a1 - a2 - a3));
      }
    if (!(worst < 1e-11)) break;
    best = D;
  }
  return best;
}

}  // namespace

// Gauss-Legendre nodes in the angles themselves cluster toward the poles,
// which resolves structure concentrated along the last axis. Each polar rule
// is rescaled so that it integrates its Jacobian factor exactly.
SphereQuadrature sphere_quadrature(int n, int level) {
  if (n != 3 && n != 4) throw std::invalid_argument("sphere_quadrature: n must be 3 or 4");
  if (level < 4) throw std::invalid_argument("sphere_quadrature: level must be >= 4");
  const double pi = std::numbers::pi;
  SphereQuadrature q;
  q.dim = n;
  q.level = level;
  const GaussLegendre th = gauss_legendre(level, 0.0, pi);
  std::vector<double> w1(level), w2(level);
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < level; ++i) {
    s1 += th.w[i] * std::sin(th.x[i]);
    s2 += th.w[i] * std::sin(th.x[i]) * std::sin(th.x[i]);
  }
  for (int i = 0; i < level; ++i) {
    w1[i] = th.w[i] * 2.0 / s1;
    w2[i] = th.w[i] * 0.5 * pi / s2;
  }
  const int nphi = 2 * level;
  const double wphi = 2.0 * pi / nphi;
  q.degree = exact_degree(n, th, w1, w2, nphi);
  std::vector<double> cphi(nphi), sphi(nphi);
  for (int k = 0; k < nphi; ++k) {
    cphi[k] = std::cos(k * wphi);
    sphi[k] = std::sin(k * wphi);
  }
  if (n == 3) {
    q.nodes.reserve(static_cast<std::size_t>(level) * nphi);
    for (int i = 0; i < level; ++i) {
      const double st = std::sin(th.x[i]), ct = std::cos(th.x[i]);
      for (int k = 0; k < nphi; ++k) {
        q.nodes.push_back({st * cphi[k], st * sphi[k], ct, 0.0});
        q.weights.push_back(w1[i] * st * wphi);
      }
    }
    return q;
  }
  q.nodes.reserve(static_cast<std::size_t>(level) * level * nphi);
  for (int j = 0; j < level; ++j) {
    const double sp = std::sin(th.x[j]), cp = std::cos(th.x[j]);
    for (int i = 0; i < level; ++i) {
      const double st = std::sin(th.x[i]), ct = std::cos(th.x[i]);
      for (int k = 0; k < nphi; ++k) {
        q.nodes.push_back({sp * st * cphi[k], sp * st * sphi[k], sp * ct, cp});
        q.weights.push_back(w2[j] * sp * sp * w1[i] * st * wphi);
      }
    }
  }
  return q;
}

double sphere_sum(const ScalarFn& f, double r, const SphereQuadrature& q, const Point& center) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    Point p = center;
    for (int k = 0; k < q.dim; ++k) p[k] += r * q.nodes[i][k];
    s += q.weights[i] * f(p);
  }
  return s;
}

double shell_integral(const ScalarFn& f, double r, const SphereQuadrature& q, const Point& center) {
  if (!(r > 0.0)) throw std::invalid_argument("shell_integral: r must be positive");
  return std::pow(r, q.dim - 1) * sphere_sum(f, r, q, center);
}

double annulus_integral(const ScalarFn& f, double r0, double r1, const SphereQuadrature& q,
                        int radial_level, const Point& center) {
  const GaussLegendre g = gauss_legendre(radial_level, r0, r1);
  double s = 0.0;
  for (int i = 0; i < radial_level; ++i)
    s += g.w[i] * std::pow(g.x[i], q.dim - 1) * sphere_sum(f, g.x[i], q, center);
  return s;
}

double ball_integral(const ScalarFn& f, double r, const SphereQuadrature& q, int radial_level,
                     const Point& center) {
  if (!(r > 0.0)) throw std::invalid_argument("ball_integral: r must be positive");
  return annulus_integral(f, 0.0, r, q, radial_level, center);
}

}  // namespace kwlab
