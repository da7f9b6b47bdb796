#include <doctest.h>

#include <cmath>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "kwlab/relax.hpp"
#include "kwlab/solutions.hpp"

using namespace kwlab;

namespace {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::vector<double> random_interior(const LatticeState& s, std::uint64_t seed, double scale) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> d(s.values().size(), 0.0);
  for (std::size_t j = 0; j < d.size(); ++j)
    if (s.is_interior(j % s.node_count())) d[j] = u(g);
  return d;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("relax") {
  TEST_CASE("zero field") {
    const auto g = LatticeGeometry::centered_box(4, 6, 2.0);
    LatticeState s(g, 4, GaugeConnection::product(4));
    CHECK(energy(s) == 0.0);
    CHECK(max_node_norm(s, gradient(s)) == 0.0);
    const FlowResult r = flow(s, 1e-12, 10);
    CHECK(r.converged);
    CHECK(r.iterations == 0);
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].energy == 0.0);
  }

  TEST_CASE("linear field energy") {
    for (int n : {3, 4})
      for (int N : {5, 8}) {
        const auto g = LatticeGeometry::centered_box(n, N, 2.0);
        const HiggsField a = HiggsField::numeric(n, 1, [](const Point& x) {
          HiggsValue v(1);
          v[0] = {x[0], 0, 0};
          return v;
        });
        const LatticeState s(g, a, GaugeConnection::product(n));
        const double h = g.spacing;
        const double expect = std::pow(h, n) * std::pow(N, n - 1) * (N - 2.0 / 3.0);
        CHECK(energy(s) == doctest::Approx(expect).epsilon(1e-13));
      }
  }

  TEST_CASE("commutator energy on the unit box") {
    // 9 nodes, h = 1/5: the 5^3 interior nodes carry unit volume
    const auto g = LatticeGeometry::centered_box(3, 9, 1.6);
    const HiggsField a = HiggsField::numeric(3, 2, [](const Point&) {
      HiggsValue v(2);
      v[0] = {1, 0, 0};
      v[1] = {0, 1, 0};
      return v;
    });
    const LatticeState s(g, a, GaugeConnection::product(3));
    CHECK(g.spacing == doctest::Approx(0.2));
    CHECK(energy(s) == doctest::Approx(4.0).epsilon(1e-13));
  }

  TEST_CASE("energy is non-negative and the boundary is frozen") {
    const auto rp = kwtest::random_pair(5, 3, 2);
    const auto g = LatticeGeometry::centered_box(3, 9, 2.0);
    LatticeState s(g, rp.a, rp.A);
    CHECK(energy(s) >= 0.0);
    std::size_t b = 0;
    while (s.is_interior(b)) ++b;
    CHECK_THROWS(s.set_value(b, HiggsValue(2)));
    const std::vector<double> before = s.values();
    std::vector<double> junk(before.size(), 7.0);
    s.assign_interior(junk);
    for (std::size_t j = 0; j < before.size(); ++j) {
      if (s.is_interior(j % s.node_count()))
        CHECK(s.values()[j] == 7.0);
      else
        CHECK(s.values()[j] == before[j]);
    }
    const auto gr = gradient(s);
    for (std::size_t j = 0; j < gr.size(); ++j)
      if (!s.is_interior(j % s.node_count())) CHECK(gr[j] == 0.0);
  }

  TEST_CASE("gradient is fourth-order consistent on the monopole") {
    const MonopolePair m = ps_monopole();
    double C[3];
    const int sizes[3] = {12, 22, 42};
    for (int i = 0; i < 3; ++i) {
      const auto g = LatticeGeometry::centered_box(3, sizes[i], 3.0);
      const LatticeState s(g, m.higgs, m.connection);
      C[i] = max_node_norm(s, gradient(s)) / std::pow(g.spacing, 4);
    }
    MESSAGE("max gradient / h^4: " << C[0] << " " << C[1] << " " << C[2]);
    CHECK(C[1] / C[0] == doctest::Approx(1.0).epsilon(0.2));
    CHECK(C[2] / C[1] == doctest::Approx(1.0).epsilon(0.1));
  }

  TEST_CASE("gradient matches directional differences of the energy") {
    const auto rp = kwtest::random_pair(11, 3, 2);
    const auto g = LatticeGeometry::centered_box(3, 10, 2.0);
    LatticeState s(g, rp.a, rp.A);
    const double hn = std::pow(g.spacing, 3);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const std::vector<double> d = random_interior(s, seed, 1.0);
      const std::vector<double> base = s.values();
      auto E_at = [&](double t) {
        std::vector<double> v = base;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += t * d[j];
        LatticeState w = s;
        w.assign_interior(v);
        return energy(w);
      };
      const double t = 1e-4;
      const double fd = (-E_at(2 * t) + 8 * E_at(t) - 8 * E_at(-t) + E_at(-2 * t)) / (12 * t);
      const double an = hn * dot(gradient(s), d);
      CHECK(fd == doctest::Approx(an).epsilon(1e-6));

      const LatticeGradient parts = gradient_parts(s);
      std::vector<double> small = d;
      for (double& x : small) x *= 0.3;
      CHECK(energy_change(s, parts, small) == doctest::Approx(E_at(0.3) - E_at(0.0)).epsilon(1e-10));
    }
  }

  TEST_CASE("exact sample is a fixed point") {
    const SolutionPair p = make_solution("ps-lift");
    const auto g = LatticeGeometry::centered_box(4, 16, 3.0);
    LatticeState s(g, p.a, p.A);
    const std::vector<double> exact = s.values();
    const double g0 = max_node_norm(s, gradient(s));
    MESSAGE("discretization gradient of the exact sample: " << g0);
    CHECK(g0 < 1e-3);
    const FlowResult r = flow(s, 1e-3, 5);
    CHECK(r.converged);
    CHECK(r.iterations <= 5);
    CHECK(interior_rms_difference(s, exact) == 0.0);
  }

  TEST_CASE("exact sample relaxes to the discrete solution nearby") {
    const MonopolePair m = ps_monopole();
    const auto g = LatticeGeometry::centered_box(3, 16, 3.0);
    LatticeState s(g, m.higgs, m.connection);
    const std::vector<double> exact = s.values();
    const FlowResult r = flow(s, 1e-6, 2000);
    CHECK(r.converged);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].energy <= r.trace[i - 1].energy);
    CHECK(interior_rms_difference(s, exact) < 1e-4);
  }

  TEST_CASE("perturbed sample returns") {
    const MonopolePair m = ps_monopole();
    const auto g = LatticeGeometry::centered_box(3, 16, 3.0);
    LatticeState s(g, m.higgs, m.connection);
    const std::vector<double> exact = s.values();
    add_smooth_perturbation(s, 0.1);
    const double start = interior_rms_difference(s, exact);
    CHECK(start > 1e-2);
    int seen = 0;
    const FlowResult r = flow(s, 1e-6, 5000, [&](const FlowStep& st, const LatticeState&) {
      ++seen;
      CHECK(st.iteration == seen);
    });
    CHECK(r.converged);
    CHECK(seen == r.iterations);
    CHECK(r.trace.back().max_gradient < 1e-6);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].energy <= r.trace[i - 1].energy);
    CHECK(interior_rms_difference(s, exact) < 1e-3);
  }

  TEST_CASE("non-convergence carries the trace") {
    const MonopolePair m = ps_monopole();
    const auto g = LatticeGeometry::centered_box(3, 12, 3.0);
    LatticeState s(g, m.higgs, m.connection);
    add_smooth_perturbation(s, 0.1);
    try {
      flow(s, 1e-12, 3);
      FAIL("expected NonConvergenceError");
    } catch (const NonConvergenceError& e) {
      CHECK(e.trace.size() == 4);
      CHECK(e.trace.back().iteration == 3);
    }
  }

  TEST_CASE("checkpoint layout and round trip") {
    const auto rp = kwtest::random_pair(3, 3, 2);
    const auto g = LatticeGeometry::centered_box(3, 7, 2.0);
    LatticeState s(g, rp.a, rp.A);
    s.assign_interior(random_interior(s, 9, 0.5));
    const std::string path = temp_path("kwlab_relax_test.ckpt");
    save_checkpoint(path, s);
    const std::size_t N = s.node_count();
    CHECK(std::filesystem::file_size(path) == 8 + 4 * 6 + 8 * 5 + 8 * N * 6);

    std::ifstream is(path, std::ios::binary);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), {});
    CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "KWRELAX1");
    auto u32 = [&](std::size_t off) {
      return bytes[off] | bytes[off + 1] << 8 | bytes[off + 2] << 16 | std::uint32_t(bytes[off + 3]) << 24;
    };
    auto f64 = [&](std::size_t off) {
      std::uint64_t b = 0;
      for (int k = 7; k >= 0; --k) b = b << 8 | bytes[off + k];
      return std::bit_cast<double>(b);
    };
    CHECK(u32(8) == 3);
    CHECK(u32(12) == 2);
    CHECK(u32(16) == 7);
    CHECK(u32(28) == 1);
    CHECK(f64(32) == g.spacing);
    CHECK(f64(40) == -1.0);
    CHECK(f64(64) == 0.0);
    const std::size_t data = 72;
    // node 1, component 0, coefficient 2; then node 0, component 1, coefficient 0
    CHECK(f64(data + 8 * (6 * 1 + 2)) == s.values()[2 * N + 1]);
    CHECK(f64(data + 8 * 3) == s.values()[3 * N + 0]);

    LatticeState t(g, rp.a, rp.A);
    load_checkpoint(path, t);
    CHECK(t.values() == s.values());

    LatticeState other(LatticeGeometry::centered_box(3, 8, 2.0), rp.a, rp.A);
    CHECK_THROWS_AS(load_checkpoint(path, other), std::runtime_error);
    LatticeState wrong_vdim(g, 1, rp.A);
    CHECK_THROWS_AS(load_checkpoint(path, wrong_vdim), std::runtime_error);
    LatticeState wrong_boundary(g, kwtest::random_pair(4, 3, 2).a, rp.A);
    CHECK_THROWS_AS(load_checkpoint(path, wrong_boundary), std::runtime_error);

    std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
    CHECK_THROWS_AS(load_checkpoint(path, t), std::runtime_error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_checkpoint(path, t), std::runtime_error);
  }
}
