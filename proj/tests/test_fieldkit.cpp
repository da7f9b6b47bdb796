#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "kwlab/fieldkit.hpp"
#include "kwlab/solutions.hpp"

using namespace kwlab;

namespace {

HiggsField along(int dim, int vdim, int comp, LieVector sigma, double (*f)(const Point&)) {
  return HiggsField::numeric(dim, vdim, [=](const Point& x) {
    HiggsValue v(vdim);
    v[comp] = f(x) * sigma;
    return v;
  });
}

double max_diff(const HiggsValue& a, const HiggsValue& b) { return norm(a - b); }

TwoForm random_form(std::mt19937_64& g) {
  TwoForm w(4);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) w.set(a, b, kwtest::random_lie(g));
  return w;
}

}  // namespace

TEST_SUITE("fieldkit") {
  TEST_CASE("covariant derivative basics") {
    const GaugeConnection flat = GaugeConnection::product(4);
    const HiggsField c = along(4, 2, 1, {0, 0, 1}, [](const Point&) { return 2.0; });
    for (int al = 0; al < 4; ++al) CHECK(norm(covariant_derivative(c, flat, {0.3, -1, 2, 0.5}, al)) < 1e-12);
    const HiggsField lin = along(4, 2, 1, {0, 0, 1}, [](const Point& x) { return x[0]; });
    const HiggsValue d = covariant_derivative(lin, flat, {0.3, -1, 2, 0.5}, 0);
    CHECK(d[1][2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm(d[0]) == 0.0);
  }

  TEST_CASE("monopole Higgs derivative agrees with finite differences") {
    const MonopolePair m = ps_monopole();
    const Point x{1, 0, 0, 0};
    const HiggsField num = m.higgs.as_numeric(1e-3);
    for (int al = 0; al < 3; ++al) {
      const HiggsValue a = covariant_derivative(m.higgs, m.connection, x, al);
      const HiggsValue b = covariant_derivative(num, m.connection, x, al);
      CHECK(max_diff(a, b) < 1e-8);
    }
  }

  TEST_CASE("curvature examples") {
    CHECK(max_norm(curvature(GaugeConnection::product(4), {1, 2, 3, 4})) == 0.0);
    const LieVector sigma{0, 1, 0};
    const GaugeConnection ab = GaugeConnection::numeric(4, [=](const Point& x) {
      std::array<LieVector, 4> A{};
      A[1] = x[0] * sigma;
      return A;
    });
    const TwoForm F = curvature(ab, {0.5, -0.2, 1.0, 2.0});
    CHECK(norm(F(0, 1) - sigma) < 1e-10);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (!((a == 0 && b == 1) || (a == 1 && b == 0))) CHECK(norm(F(a, b)) < 1e-10);
  }

  TEST_CASE("monopole curvature equals the star of the Higgs derivative") {
    const MonopolePair m = ps_monopole();
    for (const Point& x : {Point{1, 0, 0, 0}, Point{0.3, -0.7, 1.1, 0}, Point{2, 2, -1, 0}}) {
      const TwoForm F = curvature(m.connection, x);
      std::array<HiggsValue, 3> d;
      for (int k = 0; k < 3; ++k) d[k] = covariant_derivative(m.higgs, m.connection, x, k);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          LieVector s;
          for (int k = 0; k < 3; ++k) s += levi_civita3(i, j, k) * d[k][0];
          CHECK(norm(F(i, j) - s) < 1e-8);
        }
    }
  }

  TEST_CASE("curvature is antisymmetric on random connections") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const auto p = kwtest::random_pair(s);
      const TwoForm F = curvature(p.A, {0.2 * s, -0.1, 0.4, 1.0});
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(norm(F(a, b) + F(b, a)) == 0.0);
    }
  }

  TEST_CASE("covariant Laplacian examples") {
    const GaugeConnection flat = GaugeConnection::product(4);
    const LieVector sigma{1, 0, 0};
    const HiggsField lin = along(4, 1, 0, sigma, [](const Point& x) { return 2 * x[0] - x[3]; });
    CHECK(norm(covariant_laplacian(lin, flat, {0.4, 0.1, -2, 1})) < 1e-8);
    const HiggsField quad = along(4, 1, 0, sigma, [](const Point& x) {
      return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    });
    const HiggsValue L = covariant_laplacian(quad, flat, {0.4, 0.1, -2, 1});
    CHECK(L[0][0] == doctest::Approx(-8.0).epsilon(1e-8));
  }

  TEST_CASE("numeric and analytic modes agree on the monopole lift") {
    const SolutionPair p = lift_to_r4(ps_monopole());
    const HiggsField an = p.a.as_numeric(1e-3);
    const GaugeConnection An = p.A.as_numeric(1e-3);
    for (const Point& x : {Point{0.5, 0.2, -0.3, 1.0}, Point{1.5, -1, 2, -3}, Point{0.05, 0.02, 0.01, 0}}) {
      CHECK(norm(covariant_laplacian(p.a, p.A, x) - covariant_laplacian(an, An, x)) < 1e-6);
      CHECK(max_norm(curvature(p.A, x) - curvature(An, x)) < 1e-6);
    }
  }

  TEST_CASE("numeric derivatives converge at fourth order") {
    const MonopolePair m = ps_monopole();
    const Point x{0.8, -0.4, 0.6, 0};
    const HiggsJet ex = m.higgs.jet(x);
    auto err = [&](double s) {
      const HiggsJet j = m.higgs.as_numeric(s).jet(x);
      double e = 0.0;
      for (int b = 0; b < 3; ++b) e = std::max(e, norm(j.grad[b] - ex.grad[b]));
      return e;
    };
    const double r = err(0.04) / err(0.02);
    CHECK(r > 12.0);
    CHECK(r < 20.0);
  }

  TEST_CASE("Hodge split") {
    const LieVector s{0, 0, 1};
    TwoForm w(4);
    w.set(0, 1, s);
    w.set(2, 3, s);
    auto [p, m] = hodge_split(w);
    CHECK(max_norm(p - w) == 0.0);
    CHECK(max_norm(m) == 0.0);

    TwoForm u(4);
    u.set(0, 1, s);
    auto [up, um] = hodge_split(u);
    CHECK(up(0, 1)[2] == 0.5);
    CHECK(up(2, 3)[2] == 0.5);
    CHECK(um(0, 1)[2] == 0.5);
    CHECK(um(2, 3)[2] == -0.5);

    std::mt19937_64 g(4);
    for (int i = 0; i < 50; ++i) {
      const TwoForm r = random_form(g);
      auto [rp, rm] = hodge_split(r);
      CHECK(max_norm(rp + rm - r) < 1e-15);
      CHECK(max_norm(hodge_star(rp) - rp) < 1e-15);
      CHECK(max_norm(hodge_star(rm) + rm) < 1e-15);
      auto [pp, pm] = hodge_split(rp);
      CHECK(max_norm(pp - rp) < 1e-15);
      CHECK(max_norm(pm) < 1e-15);
    }
    CHECK_THROWS(hodge_split(TwoForm(3)));
  }

  TEST_CASE("fields are deterministic") {
    const SolutionPair p = lift_to_r4(ps_monopole());
    const Point x{0.3, 0.2, 0.1, 0.7};
    const HiggsValue a = p.a(x), b = p.a(x);
    for (int c = 0; c < 4; ++c) CHECK(a[c] == b[c]);
  }
}
