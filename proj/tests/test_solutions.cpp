#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kwlab/errors.hpp"
#include "kwlab/quadrature.hpp"
#include "kwlab/residuals.hpp"
#include "kwlab/solutions.hpp"

using namespace kwlab;

namespace {

double max_field_diff(const HiggsField& a, const HiggsField& b, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const Point& x : pts) m = std::max(m, norm(a(x) - b(x)));
  return m;
}

double max_connection_diff(const GaugeConnection& A, const GaugeConnection& B, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const Point& x : pts) {
    const auto a = A(x), b = B(x);
    for (int al = 0; al < 4; ++al) m = std::max(m, norm(a[al] - b[al]));
  }
  return m;
}

}  // namespace

TEST_SUITE("solutions") {
  TEST_CASE("monopole Higgs magnitude") {
    // closed form in this basis: coth(2 rho) - 1/(2 rho)
    CHECK(ps_higgs_magnitude(1.0) == doctest::Approx(1.0 / std::tanh(2.0) - 0.5).epsilon(1e-14));
    CHECK(ps_higgs_magnitude(1.0) == doctest::Approx(0.5373147).epsilon(1e-7));
    CHECK(std::abs(ps_higgs_magnitude(10.0) - 1.0) < 0.11);
    const MonopolePair m = ps_monopole();
    for (const Point& x : standard_points(3, 200, 20.0, 5)) {
      double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      CHECK(norm(m.higgs(x)) < 1.0);
      CHECK(norm(m.higgs(x)[0]) == doctest::Approx(ps_higgs_magnitude(r)).epsilon(1e-13));
    }
    CHECK(norm(m.higgs({0, 0, 0, 0})) == 0.0);
  }

  TEST_CASE("series and closed form meet smoothly") {
    const double u0 = 0.1;  // rho at the switch u = 2 rho = 0.2
    const double below = ps_higgs_magnitude(u0 * (1 - 1e-9));
    const double above = ps_higgs_magnitude(u0 * (1 + 1e-9));
    CHECK(std::abs(above - below) < 1e-9);
    const MonopolePair m = ps_monopole();
    const auto lo = m.higgs.jet({u0 * (1 - 1e-9), 0, 0, 0});
    const auto hi = m.higgs.jet({u0 * (1 + 1e-9), 0, 0, 0});
    CHECK(norm(lo.laplacian - hi.laplacian) < 1e-7);
  }

  TEST_CASE("monopole residual at 50 points") {
    const MonopolePair m = ps_monopole();
    const auto rep = monopole_report(m, standard_points(3, 50, 5.0, 3));
    CHECK(rep.max < 1e-8);
  }

  TEST_CASE("lift") {
    const MonopolePair m = ps_monopole();
    const SolutionPair p = lift_to_r4(m);
    CHECK(p.claims.master);
    CHECK(p.claims.wedge_zero);
    CHECK(p.claims.claims_kw(0.5));
    CHECK_THROWS_AS(lift_to_r4(m, -1), ConventionError);
    CHECK_NOTHROW(lift_to_r4(m, 1));
    CHECK_THROWS_AS(lift_to_r4(m, 2), std::invalid_argument);
    for (const Point& x : standard_points(4, 20, 5.0, 8)) {
      Point y = x;
      y[3] = 0.0;
      Point z = x;
      z[3] = 3.7;
      const HiggsValue a = p.a(y), b = p.a(z);
      for (int c = 0; c < 4; ++c) CHECK(a[c] == b[c]);
      const auto A = p.A(y), B = p.A(z);
      for (int al = 0; al < 4; ++al) CHECK(A[al] == B[al]);
      CHECK(wedge_square(p.a(x)) == 0.0);
      CHECK(norm(p.a(x)[0]) == 0.0);
    }
  }

  TEST_CASE("commuting modes") {
    const SphereQuadrature q = sphere_quadrature(4, 12);
    const SolutionPair c = commuting_mode(ModeKind::constant, {1, 0, 0, 0}, {1, 0, 0});
    const double k = std::sqrt(sphere_sum([&](const Point& x) { return norm2(c.a(x)); }, 1.0, q));
    CHECK(k == doctest::Approx(std::sqrt(2.0) * std::numbers::pi).epsilon(1e-12));
    const SolutionPair l = commuting_mode(ModeKind::linear_selfdual, {1, 0, 0, 0}, {0, 1, 0});
    const Point x{1, 2, 3, 4};
    CHECK(l.a(x)[0] == LieVector{0, -2, 0});
    CHECK(l.a(x)[1] == LieVector{0, 1, 0});
    CHECK(l.a(x)[2] == LieVector{0, -4, 0});
    CHECK(l.a(x)[3] == LieVector{0, 3, 0});
    const SolutionPair h = commuting_mode(ModeKind::radial_harmonic, {0, 1, 0, 0}, {0, 0, 1}, 3, 2);
    CHECK(h.a({1, 2, 3, 0})[1] == LieVector{0, 0, 2});
    CHECK_THROWS(commuting_mode(ModeKind::constant, {1, 1, 0, 0}, {1, 0, 0}));
    CHECK_THROWS(commuting_mode(ModeKind::constant, {1, 0, 0, 0}, {2, 0, 0}));
  }

  TEST_CASE("tau map coefficients") {
    const TauMap half = tau_coefficients(0.5);
    CHECK(half.shift == 0.0);
    CHECK(half.scale == 1.0);
    const TauMap printed = tau_coefficients(0.5, TauCoefficients::printed);
    CHECK(printed.shift == 0.0);
    CHECK(printed.scale == -2.0);
    for (double t : {0.1, 0.25, 0.8}) {
      const TauMap a = tau_coefficients(t), b = tau_coefficients(t, TauCoefficients::printed);
      CHECK(b.shift == doctest::Approx(-2.0 * a.shift));
      CHECK(b.scale == doctest::Approx(-2.0 * a.scale));
    }
    CHECK_THROWS_AS(tau_coefficients(0.0), std::domain_error);
    CHECK_THROWS_AS(tau_coefficients(1.0), std::domain_error);
  }

  TEST_CASE("tau transform at one half and on a zero field") {
    const SolutionPair p = lift_to_r4(ps_monopole());
    const auto pts = standard_points(4, 20, 5.0, 9);
    const SolutionPair q = tau_transform(p, 0.5, TauCoefficients::printed);
    CHECK(max_connection_diff(q.A, p.A, pts) == 0.0);
    for (const Point& x : pts) CHECK(norm(q.a(x) - (-2.0) * p.a(x)) < 1e-15);
    const SolutionPair id = tau_transform(p, 0.5);
    CHECK(max_field_diff(id.a, p.a, pts) < 1e-15);

    SolutionPair z = commuting_mode(ModeKind::constant, {1, 0, 0, 0}, {1, 0, 0});
    z.a = HiggsField::zero(4, 4);
    const SolutionPair zt = tau_transform(z, 0.5);
    CHECK(max_field_diff(zt.a, z.a, pts) == 0.0);
    CHECK(max_connection_diff(zt.A, z.A, pts) == 0.0);
  }

  TEST_CASE("round trip through tau = 1/4 and composition of the maps") {
    const SolutionPair p = lift_to_r4(ps_monopole());
    const auto pts = standard_points(4, 100, 5.0, kStandardSeed);
    for (double t : {0.1, 0.25, 0.8}) {
      const SolutionPair q = tau_transform_inverse(p, t);
      CHECK(q.claims.claims_kw(t));
      CHECK(residual_report(q, Equation::kw, pts, t).max < 1e-8);
      const SolutionPair back = tau_transform(q, t);
      CHECK(residual_report(back, Equation::kw_half, pts).max < 1e-8);
      CHECK(max_field_diff(back.a, p.a, pts) < 1e-13);
      CHECK(max_connection_diff(back.A, p.A, pts) < 1e-13);
      // inverse is (A + shift/scale a, a/scale)
      const TauMap c = tau_coefficients(t);
      for (const Point& x : pts) {
        const auto Aq = q.A(x), Ap = p.A(x);
        const HiggsValue a = p.a(x);
        CHECK(norm(q.a(x) - (1.0 / c.scale) * a) < 1e-14);
        for (int al = 0; al < 4; ++al) CHECK(norm(Aq[al] - (Ap[al] + (c.shift / c.scale) * a[al])) < 1e-14);
      }
    }
  }

  TEST_CASE("printed coefficients do not preserve the tau = 1/2 system") {
    const SolutionPair q = tau_transform_inverse(lift_to_r4(ps_monopole()), 0.25);
    const SolutionPair f = tau_transform(q, 0.25, TauCoefficients::printed);
    CHECK(residual_report(f, Equation::kw_half, standard_points(4)).max > 1e-3);
  }

  TEST_CASE("abelian pairs") {
    LinearOneForm zero;
    const SolutionPair z = abelian_pair(zero, {0, 0, 1}, {1, 0, 0, 0});
    CHECK(max_norm(curvature(z.A, {1, 2, 3, 4})) == 0.0);
    LinearOneForm al;
    al.linear[0][1] = -1.0;
    al.linear[1][0] = 1.0;
    al.linear[2][3] = 1.0;
    al.linear[3][2] = -1.0;
    const SolutionPair p = abelian_pair(al, {0, 0, 1}, {0.6, 0, 0.8, 0});
    CHECK(p.claims.covariantly_constant);
    const auto pts = standard_points(4);
    CHECK(residual_report(p, Equation::kw, pts, 0.0).max < 1e-10);
    for (const Point& x : pts)
      for (int a = 0; a < 4; ++a) CHECK(norm(covariant_derivative(p.a, p.A, x, a)) < 1e-12);
    LinearOneForm sd;
    sd.linear[0][1] = -1.0;
    sd.linear[1][0] = 1.0;
    sd.linear[2][3] = -1.0;
    sd.linear[3][2] = 1.0;
    CHECK_THROWS_AS(abelian_pair(sd, {0, 0, 1}, {1, 0, 0, 0}), std::invalid_argument);
  }

  TEST_CASE("registry") {
    const auto labels = registry_labels();
    CHECK(labels.size() == 5);
    for (const auto& l : labels) {
      CHECK(make_solution(l).label == l);
      CHECK(!registry_description(l).empty());
    }
    CHECK_THROWS_AS(make_solution("nope"), std::invalid_argument);
  }
}
