#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kwlab/quadrature.hpp"

using namespace kwlab;

namespace {

constexpr double pi = std::numbers::pi;

// int_{S^{n-1}} x^alpha = 2 prod Gamma(b_i) / Gamma(sum b_i), b_i = (alpha_i + 1)/2
double monomial_exact(const std::array<int, 4>& al, int n) {
  double num = 1.0, sb = 0.0;
  for (int i = 0; i < n; ++i) {
    if (al[i] % 2) return 0.0;
    const double b = 0.5 * (al[i] + 1);
    num *= std::tgamma(b);
    sb += b;
  }
  return 2.0 * num / std::tgamma(sb);
}

double monomial_worst(int n, int level) {
  const SphereQuadrature q = sphere_quadrature(n, level);
  double worst = 0.0;
  std::array<int, 4> al{};
  const int D = q.degree;
  for (al[0] = 0; al[0] <= D; ++al[0])
    for (al[1] = 0; al[0] + al[1] <= D; ++al[1])
      for (al[2] = 0; al[0] + al[1] + al[2] <= D; ++al[2])
        for (al[3] = 0; al[0] + al[1] + al[2] + al[3] <= D; ++al[3]) {
          if (n == 3 && al[3] != 0) continue;
          const double got = sphere_sum(
              [&](const Point& x) {
                double v = 1.0;
                for (int i = 0; i < n; ++i) v *= std::pow(x[i], al[i]);
                return v;
              },
              1.0, q);
          worst = std::max(worst, std::abs(got - monomial_exact(al, n)));
        }
  return worst;
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials of degree 2m - 1") {
    const GaussLegendre g = gauss_legendre(7, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 13);
    CHECK(s == doctest::Approx(std::pow(2.0, 14) / 14.0).epsilon(1e-14));
  }

  TEST_CASE("sphere measure and simple moments") {
    const SphereQuadrature q = sphere_quadrature(4, 12);
    CHECK(q.measure() == doctest::Approx(2 * pi * pi).epsilon(1e-12));
    CHECK(unit_sphere_measure(4) == doctest::Approx(19.7392088).epsilon(1e-9));
    CHECK(sphere_sum([](const Point& x) { return x[0] * x[0]; }, 1.0, q) ==
          doctest::Approx(pi * pi / 2).epsilon(1e-12));
    CHECK(std::abs(sphere_sum([](const Point& x) { return x[0] * x[1] * x[1]; }, 1.0, q)) < 1e-12);
    CHECK(std::abs(sphere_sum([](const Point& x) { return x[3] * x[3] * x[3]; }, 1.0, q)) < 1e-12);
    const SphereQuadrature q3 = sphere_quadrature(3, 10);
    CHECK(q3.measure() == doctest::Approx(4 * pi).epsilon(1e-12));
    for (double w : q.weights) CHECK(w > 0.0);
  }

  TEST_CASE("monomial battery through the declared degree") {
    for (int level : {6, 12, 24}) {
      CHECK(monomial_worst(4, level) < 1e-10);
      CHECK(monomial_worst(3, level) < 1e-10);
    }
  }

  TEST_CASE("ball and shell integrals") {
    const SphereQuadrature q = sphere_quadrature(4, 8);
    CHECK(ball_integral([](const Point&) { return 1.0; }, 1.0, q) == doctest::Approx(pi * pi / 2).epsilon(1e-12));
    CHECK(ball_integral([](const Point& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]; }, 1.0, q) ==
          doctest::Approx(pi * pi / 3).epsilon(1e-12));
    CHECK(shell_integral([](const Point&) { return 0.0; }, 2.0, q) == 0.0);
    CHECK(shell_integral([](const Point&) { return 1.0; }, 2.0, q) == doctest::Approx(16 * pi * pi).epsilon(1e-12));
    CHECK(annulus_integral([](const Point&) { return 1.0; }, 1.0, 2.0, q, 8) ==
          doctest::Approx(pi * pi / 2 * 15).epsilon(1e-12));
  }

  TEST_CASE("rejects unsupported input") {
    CHECK_THROWS(sphere_quadrature(5, 8));
    CHECK_THROWS(sphere_quadrature(2, 8));
    CHECK_THROWS(sphere_quadrature(4, 3));
    const SphereQuadrature q = sphere_quadrature(4, 8);
    CHECK_THROWS(shell_integral([](const Point&) { return 1.0; }, -1.0, q));
  }
}
