// Shared fixtures for the unit tests.
#ifndef KWLAB_TESTS_HELPERS_HPP_
#define KWLAB_TESTS_HELPERS_HPP_

#include <array>
#include <complex>
#include <random>

#include "kwlab/fieldkit.hpp"

namespace kwtest {

using kwlab::LieVector;
using kwlab::Point;
using Mat2 = std::array<std::complex<double>, 4>;

// e_k = -i sigma_k as 2x2 complex matrices.
inline Mat2 basis_matrix(int k) {
  const std::complex<double> i(0, 1);
  switch (k) {
    case 0: return {0.0, -i, -i, 0.0};
    case 1: return {0.0, -1.0, 1.0, 0.0};
    default: return {-i, 0.0, 0.0, i};
  }
}

inline Mat2 to_matrix(const LieVector& b) {
  Mat2 m{};
  for (int k = 0; k < 3; ++k) {
    const Mat2 e = basis_matrix(k);
    for (int j = 0; j < 4; ++j) m[j] += b[k] * e[j];
  }
  return m;
}

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

// <b c> = -1/2 tr(bc)
inline double trace_pairing(const Mat2& b, const Mat2& c) {
  const Mat2 p = mul(b, c);
  return -0.5 * (p[0] + p[3]).real();
}

inline LieVector from_matrix(const Mat2& m) {
  LieVector r;
  for (int k = 0; k < 3; ++k) r[k] = trace_pairing(basis_matrix(k), m);
  return r;
}

inline LieVector random_lie(std::mt19937_64& g, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(g), u(g), u(g)};
}

// Quadratic polynomial field with analytic jets: each coefficient is
// c + L x + x^t Q x.
struct QuadraticCoeffs {
  double c = 0.0;
  std::array<double, 4> L{};
  std::array<std::array<double, 4>, 4> Q{};
  double value(const Point& x) const {
    double s = c;
    for (int i = 0; i < 4; ++i) {
      s += L[i] * x[i];
      for (int j = 0; j < 4; ++j) s += Q[i][j] * x[i] * x[j];
    }
    return s;
  }
  double d(const Point& x, int b) const {
    double s = L[b];
    for (int j = 0; j < 4; ++j) s += (Q[b][j] + Q[j][b]) * x[j];
    return s;
  }
  double lap(int n) const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += 2.0 * Q[i][i];
    return s;
  }
};

inline QuadraticCoeffs random_quadratic(std::mt19937_64& g, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  QuadraticCoeffs q;
  q.c = u(g);
  for (int i = 0; i < n; ++i) {
    q.L[i] = u(g);
    for (int j = 0; j < n; ++j) q.Q[i][j] = 0.3 * u(g);
  }
  return q;
}

struct RandomPair {
  kwlab::GaugeConnection A;
  kwlab::HiggsField a;
};

// Smooth random (A, a) with polynomial coefficients and exact jets.
inline RandomPair random_pair(std::uint64_t seed, int n = 4, int vdim = 4, double scale = 0.5) {
  std::mt19937_64 g(seed);
  std::array<std::array<QuadraticCoeffs, 3>, 4> ac{}, hc{};
  for (int al = 0; al < n; ++al)
    for (int k = 0; k < 3; ++k) ac[al][k] = random_quadratic(g, n, scale);
  for (int c = 0; c < vdim; ++c)
    for (int k = 0; k < 3; ++k) hc[c][k] = random_quadratic(g, n, scale);
  auto aval = [ac, n](const Point& x) {
    std::array<LieVector, 4> A{};
    for (int al = 0; al < n; ++al)
      for (int k = 0; k < 3; ++k) A[al][k] = ac[al][k].value(x);
    return A;
  };
  auto ajet = [ac, n](const Point& x) {
    kwlab::ConnectionJet j;
    j.dim = n;
    for (int al = 0; al < n; ++al)
      for (int k = 0; k < 3; ++k) {
        j.A[al][k] = ac[al][k].value(x);
        for (int b = 0; b < n; ++b) j.dA[b][al][k] = ac[al][k].d(x, b);
      }
    return j;
  };
  auto hval = [hc, vdim](const Point& x) {
    kwlab::HiggsValue v(vdim);
    for (int c = 0; c < vdim; ++c)
      for (int k = 0; k < 3; ++k) v[c][k] = hc[c][k].value(x);
    return v;
  };
  auto hjet = [hc, n, vdim](const Point& x) {
    kwlab::HiggsJet j;
    j.value = kwlab::HiggsValue(vdim);
    j.laplacian = kwlab::HiggsValue(vdim);
    for (auto& gr : j.grad) gr = kwlab::HiggsValue(vdim);
    for (int c = 0; c < vdim; ++c)
      for (int k = 0; k < 3; ++k) {
        j.value[c][k] = hc[c][k].value(x);
        j.laplacian[c][k] = hc[c][k].lap(n);
        for (int b = 0; b < n; ++b) j.grad[b][c][k] = hc[c][k].d(x, b);
      }
    return j;
  };
  return {kwlab::GaugeConnection::analytic(n, aval, ajet), kwlab::HiggsField::analytic(n, vdim, hval, hjet)};
}

}  // namespace kwtest

#endif  // KWLAB_TESTS_HELPERS_HPP_
