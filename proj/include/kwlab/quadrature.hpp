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

#ifndef KWLAB_QUADRATURE_HPP_
#define KWLAB_QUADRATURE_HPP_

#include <functional>
#include <vector>

#include "kwlab/fieldkit.hpp"

namespace kwlab {

struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};

// m-point Gauss-Legendre rule mapped to [a, b].
GaussLegendre gauss_legendre(int m, double a = -1.0, double b = 1.0);

// Product rule on S^{n-1}: Gauss-Legendre in each polar angle (level nodes,
// Jacobian factors applied explicitly) and a trapezoid with 2*level nodes in the
// azimuth. The polar axis of the outermost angle is the last coordinate.
struct SphereQuadrature {
  int dim = 4;
  int level = 0;
  int degree = 0;  // monomials up to this total degree integrate to within 1e-11
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double measure() const;  // sum of weights
};

SphereQuadrature sphere_quadrature(int n, int level);

// Surface measure of the unit S^{n-1}.
double unit_sphere_measure(int n);

using ScalarFn = std::function<double(const Point&)>;

// sum_i w_i f(center + r node_i); equals the shell integral divided by r^{n-1}.
double sphere_sum(const ScalarFn& f, double r, const SphereQuadrature& q, const Point& center = {});

double shell_integral(const ScalarFn& f, double r, const SphereQuadrature& q,
                      const Point& center = {});

double ball_integral(const ScalarFn& f, double r, const SphereQuadrature& q,
                     int radial_level = 64, const Point& center = {});

// Integral over the annulus r0 <= |x - center| <= r1.
double annulus_integral(const ScalarFn& f, double r0, double r1, const SphereQuadrature& q,
                        int radial_level, const Point& center = {});

}  // namespace kwlab

#endif  // KWLAB_QUADRATURE_HPP_
