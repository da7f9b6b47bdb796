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

#include "kwlab/relax.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "kwlab/simd/kernels.hpp"

namespace kwlab {

std::size_t LatticeGeometry::node_count() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(extent[a]);
  return n;
}

LatticeGeometry LatticeGeometry::centered_box(int dim, int nodes, double side) {
  if (dim != 3 && dim != 4) throw std::invalid_argument("lattice dimension must be 3 or 4");
  if (nodes < 2 * LatticeState::kBoundary + 1) throw std::invalid_argument("too few nodes per axis");
  if (!(side > 0.0)) throw std::invalid_argument("box side must be positive");
  LatticeGeometry g;
  g.dim = dim;
  g.spacing = side / (nodes - 1);
  for (int a = 0; a < dim; ++a) {
    g.extent[a] = nodes;
    g.origin[a] = -0.5 * side;
  }
  return g;
}

namespace {

constexpr double kW1 = 4.0 / 3.0;
constexpr double kW2 = -1.0 / 12.0;

// exp of the cross-product matrix of w: rotation by |w| about w.
void rodrigues(const LieVector& w, double* R) {
  const double th2 = norm2(w);
  double s, c;  // sin(t)/t, (1 - cos t)/t^2
  if (th2 < 1e-8) {
    s = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
    c = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
  } else {
    const double th = std::sqrt(th2);
    s = std::sin(th) / th;
    c = (1.0 - std::cos(th)) / th2;
  }
  const double x = w[0], y = w[1], z = w[2];
  const double K[9] = {0, -z, y, z, 0, -x, -y, x, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double k2 = 0.0;
      for (int m = 0; m < 3; ++m) k2 += K[3 * i + m] * K[3 * m + j];
      R[3 * i + j] = (i == j ? 1.0 : 0.0) + s * K[3 * i + j] + c * k2;
    }
}

simd::MatView mat_view(const std::vector<double>& L, std::size_t N) {
  simd::MatView m;
  for (int q = 0; q < 9; ++q) m.m[q] = L.data() + q * N;
  return m;
}

struct Views {
  std::array<simd::Vec3View, 4> in;
  std::array<simd::Vec3Out, 4> out;
};

std::array<simd::Vec3View, 4> views(const std::vector<double>& v, int vdim, std::size_t N) {
  std::array<simd::Vec3View, 4> r{};
  for (int c = 0; c < vdim; ++c)
    r[c] = {v.data() + (3 * c) * N, v.data() + (3 * c + 1) * N, v.data() + (3 * c + 2) * N};
  return r;
}

std::array<simd::Vec3Out, 4> outs(std::vector<double>& v, int vdim, std::size_t N) {
  std::array<simd::Vec3Out, 4> r{};
  for (int c = 0; c < vdim; ++c)
    r[c] = {v.data() + (3 * c) * N, v.data() + (3 * c + 1) * N, v.data() + (3 * c + 2) * N};
  return r;
}

// Visits rows along the last axis: fn(base index, coords of the row start).
template <class F>
void for_rows(const LatticeState& s, F&& fn) {
  const int n = s.dim();
  const int last = s.geometry().extent[n - 1];
  const std::size_t rows = s.node_count() / last;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t base = r * last;
    fn(base, s.coords(base));
  }
}

double kinetic_energy_of(const LatticeState& s, const std::vector<double>& field) {
  const auto& kern = simd::kernels();
  const std::size_t N = s.node_count();
  const int n = s.dim(), vd = s.vdim();
  const auto& ext = s.geometry().extent;
  const auto a = views(field, vd, N);
  double total = 0.0;
  for (int ax = 0; ax < n; ++ax)
    for (int hop = 1; hop <= 2; ++hop) {
      const double w = hop == 1 ? kW1 : kW2;
      const simd::MatView T = mat_view(s.links(ax, hop), N);
      const std::ptrdiff_t sh = hop * s.stride(ax);
      double sum = 0.0;
      for_rows(s, [&](std::size_t base, const std::array<int, 4>& c) {
        if (ax == n - 1) {
          sum += kern.edge_energy(a.data(), vd, T, sh, base, base + ext[ax] - hop);
        } else if (c[ax] + hop < ext[ax]) {
          sum += kern.edge_energy(a.data(), vd, T, sh, base, base + ext[n - 1]);
        }
      });
      total += w * sum;
    }
  const double h = s.geometry().spacing;
  return std::pow(h, n - 2) * total;
}

// Interior node ranges along the last axis.
template <class F>
void for_interior_rows(const LatticeState& s, F&& fn) {
  const int n = s.dim();
  const auto& ext = s.geometry().extent;
  const int B = LatticeState::kBoundary;
  for_rows(s, [&](std::size_t base, const std::array<int, 4>& c) {
    for (int ax = 0; ax < n - 1; ++ax)
      if (c[ax] < B || c[ax] >= ext[ax] - B) return;
    fn(base + B, base + ext[n - 1] - B);
  });
}

}  // namespace

// ---------------------------------------------------------------- state

LatticeState::LatticeState(const LatticeGeometry& g, int vdim, const GaugeConnection& A)
    : geom_(g), vdim_(HiggsValue(vdim).vdim), count_(g.node_count()) {
  if (g.dim != 3 && g.dim != 4) throw std::invalid_argument("lattice dimension must be 3 or 4");
  if (A.dim() != g.dim) throw std::invalid_argument("connection dimension mismatch");
  if (!(g.spacing > 0.0)) throw std::invalid_argument("spacing must be positive");
  for (int a = 0; a < g.dim; ++a)
    if (g.extent[a] < 2 * kBoundary + 1) throw std::invalid_argument("too few nodes per axis");
  std::ptrdiff_t st = 1;
  for (int a = g.dim - 1; a >= 0; --a) {
    stride_[a] = st;
    st *= g.extent[a];
  }
  a_.assign(static_cast<std::size_t>(vdim_) * 3 * count_, 0.0);
  interior_.resize(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    const auto c = coords(i);
    bool in = true;
    for (int a = 0; a < g.dim; ++a)
      if (c[a] < kBoundary || c[a] >= g.extent[a] - kBoundary) in = false;
    interior_[i] = in;
  }
  build_links(A);
}

LatticeState::LatticeState(const LatticeGeometry& g, const HiggsField& seed, const GaugeConnection& A)
    : LatticeState(g, seed.vdim(), A) {
  if (seed.dim() != g.dim) throw std::invalid_argument("seed dimension mismatch");
  for (std::size_t i = 0; i < count_; ++i) {
    const HiggsValue v = seed(position(i));
    for (int c = 0; c < vdim_; ++c)
      for (int k = 0; k < 3; ++k) a_[(3 * c + k) * count_ + i] = v[c][k];
  }
}

std::array<int, 4> LatticeState::coords(std::size_t idx) const {
  std::array<int, 4> c{};
  for (int a = 0; a < geom_.dim; ++a) {
    c[a] = static_cast<int>(idx / stride_[a]);
    idx %= stride_[a];
  }
  return c;
}

Point LatticeState::position(std::size_t idx) const {
  const auto c = coords(idx);
  Point p{};
  for (int a = 0; a < geom_.dim; ++a) p[a] = geom_.origin[a] + geom_.spacing * c[a];
  return p;
}

bool LatticeState::is_interior(std::size_t idx) const { return interior_[idx] != 0; }

HiggsValue LatticeState::value(std::size_t idx) const {
  HiggsValue v(vdim_);
  for (int c = 0; c < vdim_; ++c)
    for (int k = 0; k < 3; ++k) v[c][k] = a_[(3 * c + k) * count_ + idx];
  return v;
}

void LatticeState::set_value(std::size_t idx, const HiggsValue& v) {
  if (!is_interior(idx)) throw std::invalid_argument("boundary nodes are frozen");
  if (v.vdim != vdim_) throw std::invalid_argument("vdim mismatch");
  for (int c = 0; c < vdim_; ++c)
    for (int k = 0; k < 3; ++k) a_[(3 * c + k) * count_ + idx] = v[c][k];
}

void LatticeState::assign_interior(const std::vector<double>& v) {
  if (v.size() != a_.size()) throw std::invalid_argument("size mismatch");
  for (std::size_t j = 0; j < a_.size(); ++j)
    if (interior_[j % count_]) a_[j] = v[j];
}

void LatticeState::build_links(const GaugeConnection& A) {
  const double h = geom_.spacing;
  const double g1 = 0.5 - std::sqrt(3.0) / 6.0, g2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double c2 = std::sqrt(3.0) * h * h / 3.0;
  for (int ax = 0; ax < geom_.dim; ++ax) {
    auto& L1 = links_[ax][0];
    auto& L2 = links_[ax][1];
    L1.assign(9 * count_, 0.0);
    L2.assign(9 * count_, 0.0);
    for (std::size_t i = 0; i < count_; ++i) {
      double R[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
      if (coords(i)[ax] + 1 < geom_.extent[ax] && !A.is_product()) {
        Point p = position(i);
        const double x0 = p[ax];
        p[ax] = x0 + g1 * h;
        const LieVector A1 = A(p)[ax];
        p[ax] = x0 + g2 * h;
        const LieVector A2 = A(p)[ax];
        // two-point Magnus step for the adjoint transport, ad_A = 2 A x
        const LieVector cr{A1[1] * A2[2] - A1[2] * A2[1], A1[2] * A2[0] - A1[0] * A2[2],
                           A1[0] * A2[1] - A1[1] * A2[0]};
        rodrigues(h * (A1 + A2) + c2 * cr, R);
      }
      for (int q = 0; q < 9; ++q) L1[q * count_ + i] = R[q];
    }
    for (std::size_t i = 0; i < count_; ++i) {
      double R[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
      if (coords(i)[ax] + 2 < geom_.extent[ax]) {
        const std::size_t j = i + stride_[ax];
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int m = 0; m < 3; ++m) s += L1[(3 * r + m) * count_ + i] * L1[(3 * m + c) * count_ + j];
            R[3 * r + c] = s;
          }
      }
      for (int q = 0; q < 9; ++q) L2[q * count_ + i] = R[q];
    }
  }
}

// ---------------------------------------------------------------- energy

double energy(const LatticeState& s) {
  const auto& kern = simd::kernels();
  const std::size_t N = s.node_count();
  const auto a = views(s.values(), s.vdim(), N);
  double pot = 0.0;
  std::vector<double> scratch(s.vdim() * 3 * N, 0.0);
  const auto o = outs(scratch, s.vdim(), N);
  for_interior_rows(s, [&](std::size_t b, std::size_t e) {
    pot += kern.commutator_terms(a.data(), s.vdim(), 0.0, b, e, o.data());
  });
  return kinetic_energy_of(s, s.values()) + std::pow(s.geometry().spacing, s.dim()) * pot;
}

std::vector<double> LatticeGradient::total() const {
  std::vector<double> t = kinetic;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += potential[i];
  return t;
}

LatticeGradient gradient_parts(const LatticeState& s) {
  const auto& kern = simd::kernels();
  const std::size_t N = s.node_count();
  const int n = s.dim(), vd = s.vdim();
  const double h2 = s.geometry().spacing * s.geometry().spacing;
  LatticeGradient g;
  g.kinetic.assign(s.values().size(), 0.0);
  g.potential.assign(s.values().size(), 0.0);
  const auto a = views(s.values(), vd, N);
  const auto ok = outs(g.kinetic, vd, N);
  const auto op = outs(g.potential, vd, N);
  for_interior_rows(s, [&](std::size_t b, std::size_t e) {
    for (int ax = 0; ax < n; ++ax)
      for (int hop = 1; hop <= 2; ++hop) {
        const double w = hop == 1 ? kW1 : kW2;
        kern.edge_gradient(a.data(), vd, mat_view(s.links(ax, hop), N), hop * s.stride(ax),
                           2.0 * w / h2, b, e, ok.data());
      }
    kern.commutator_terms(a.data(), vd, 2.0, b, e, op.data());
  });
  return g;
}

std::vector<double> gradient(const LatticeState& s) { return gradient_parts(s).total(); }

double max_node_norm(const LatticeState& s, const std::vector<double>& f) {
  const std::size_t N = s.node_count();
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double t = 0.0;
    for (int j = 0; j < 3 * s.vdim(); ++j) t += f[j * N + i] * f[j * N + i];
    m = std::max(m, t);
  }
  return std::sqrt(m);
}

double energy_change(const LatticeState& s, const LatticeGradient& g, const std::vector<double>& d) {
  const auto& kern = simd::kernels();
  const std::size_t N = s.node_count();
  const double hn = std::pow(s.geometry().spacing, s.dim());
  // kinetic part is quadratic: K(a + d) - K(a) = h^n <g_kin, d> + K(d)
  const double lin = hn * kern.dot(g.kinetic.data(), d.data(), d.size());
  const double quad = kinetic_energy_of(s, d);
  const auto a = views(s.values(), s.vdim(), N);
  const auto dd = views(d, s.vdim(), N);
  double pot = 0.0;
  for_interior_rows(s, [&](std::size_t b, std::size_t e) {
    pot += kern.commutator_delta(a.data(), dd.data(), s.vdim(), b, e);
  });
  return lin + quad + hn * pot;
}

// ---------------------------------------------------------------- flow

FlowResult flow(LatticeState& s, double tol, int max_iters, const FlowObserver& observe) {
  if (!(tol > 0.0)) throw std::invalid_argument("flow: tol must be positive");
  if (max_iters < 0) throw std::invalid_argument("flow: max_iters must be non-negative");
  const auto& kern = simd::kernels();
  const double h = s.geometry().spacing;
  FlowResult res;
  double E = energy(s);
  LatticeGradient g = gradient_parts(s);
  std::vector<double> gt = g.total();
  double step = 0.1 * h * h / s.dim();
  std::vector<double> d(gt.size()), prev_g;
  for (int it = 0;; ++it) {
    const double gmax = max_node_norm(s, gt);
    if (it == 0) res.trace.push_back({0, E, gmax, 0.0, 0});
    if (gmax < tol) {
      res.converged = true;
      res.iterations = it;
      return res;
    }
    if (it >= max_iters)
      throw NonConvergenceError("flow did not reach max gradient " + std::to_string(tol) + " in " +
                                    std::to_string(max_iters) + " iterations (now " +
                                    std::to_string(gmax) + ")",
                                res.trace);
    int halvings = 0;
    double dE = 0.0;
    for (;;) {
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = -step * gt[j];
      dE = energy_change(s, g, d);
      if (dE <= 0.0) break;
      step *= 0.5;
      if (++halvings > 60)
        throw NonConvergenceError("flow: no energy-decreasing step found", res.trace);
    }
    std::vector<double> next = s.values();
    kern.axpy(1.0, d.data(), next.data(), next.size());
    s.assign_interior(next);
    E += dE;
    prev_g = std::move(gt);
    g = gradient_parts(s);
    gt = g.total();
    // Barzilai-Borwein: step = <d, d> / <d, y> with y the gradient change
    std::vector<double> y(gt.size());
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = gt[j] - prev_g[j];
    const double dd = kern.dot(d.data(), d.data(), d.size());
    const double dy = kern.dot(d.data(), y.data(), d.size());
    const double used = step;
    step = dy > 0.0 ? dd / dy : 2.0 * step;
    res.trace.push_back({it + 1, E, max_node_norm(s, gt), used, halvings});
    if (observe) observe(res.trace.back(), s);
  }
}

// ---------------------------------------------------------------- helpers

void add_smooth_perturbation(LatticeState& s, double rel) {
  const std::size_t N = s.node_count();
  const double sup = max_node_norm(s, s.values());
  const double amp = rel * sup;
  const auto& ext = s.geometry().extent;
  for (std::size_t i = 0; i < N; ++i) {
    if (!s.is_interior(i)) continue;
    const auto c = s.coords(i);
    double b = 1.0;
    for (int a = 0; a < s.dim(); ++a) b *= std::sin(std::numbers::pi * (c[a] - 1) / (ext[a] - 3));
    HiggsValue v = s.value(i);
    // unit per-node pattern spread over all components
    HiggsValue pat(s.vdim());
    for (int k = 0; k < s.vdim(); ++k)
      pat[k] = LieVector{std::cos(1.0 + k), std::sin(2.0 + k), 0.5 * std::cos(3.0 * k)};
    pat *= 1.0 / norm(pat);
    v += (amp * b) * pat;
    s.set_value(i, v);
  }
}

double interior_rms_difference(const LatticeState& s, const std::vector<double>& other) {
  const std::size_t N = s.node_count();
  const auto& a = s.values();
  double sum = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (!s.is_interior(i)) continue;
    for (int j = 0; j < 3 * s.vdim(); ++j) {
      const double d = a[j * N + i] - other[j * N + i];
      sum += d * d;
    }
    ++cnt;
  }
  return cnt ? std::sqrt(sum / cnt) : 0.0;
}

// ---------------------------------------------------------------- checkpoint

namespace {

constexpr char kMagic[8] = {'K', 'W', 'R', 'E', 'L', 'A', 'X', '1'};

template <class T>
void put_le(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char b[sizeof(T)];
  is.read(reinterpret_cast<char*>(b), sizeof(T));
  if (!is) throw std::runtime_error("checkpoint: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const LatticeState& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write checkpoint " + path);
  const auto& g = s.geometry();
  os.write(kMagic, 8);
  put_le<std::uint32_t>(os, g.dim);
  put_le<std::uint32_t>(os, s.vdim());
  for (int a = 0; a < 4; ++a) put_le<std::uint32_t>(os, a < g.dim ? g.extent[a] : 1);
  put_le<double>(os, g.spacing);
  for (int a = 0; a < 4; ++a) put_le<double>(os, g.origin[a]);
  const std::size_t N = s.node_count();
  for (std::size_t i = 0; i < N; ++i)
    for (int j = 0; j < 3 * s.vdim(); ++j) put_le<double>(os, s.values()[j * N + i]);
  if (!os) throw std::runtime_error("failed writing checkpoint " + path);
}

void load_checkpoint(const std::string& path, LatticeState& s) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read checkpoint " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("not a kwlab checkpoint: " + path);
  const auto& g = s.geometry();
  const auto dim = get_le<std::uint32_t>(is);
  const auto vdim = get_le<std::uint32_t>(is);
  bool match = static_cast<int>(dim) == g.dim && static_cast<int>(vdim) == s.vdim();
  for (int a = 0; a < 4; ++a) {
    const auto e = get_le<std::uint32_t>(is);
    if (a < g.dim && static_cast<int>(e) != g.extent[a]) match = false;
  }
  const double h = get_le<double>(is);
  Point o{};
  for (int a = 0; a < 4; ++a) o[a] = get_le<double>(is);
  if (std::abs(h - g.spacing) > 1e-14 * g.spacing) match = false;
  for (int a = 0; a < g.dim; ++a)
    if (std::abs(o[a] - g.origin[a]) > 1e-12) match = false;
  if (!match) throw std::runtime_error("checkpoint geometry does not match the lattice");
  const std::size_t N = s.node_count();
  std::vector<double> v(s.values().size());
  for (std::size_t i = 0; i < N; ++i)
    for (int j = 0; j < 3 * s.vdim(); ++j) v[j * N + i] = get_le<double>(is);
  for (std::size_t i = 0; i < N; ++i) {
    if (s.is_interior(i)) continue;
    for (int j = 0; j < 3 * s.vdim(); ++j)
      if (std::abs(v[j * N + i] - s.values()[j * N + i]) > 1e-12)
        throw std::runtime_error("checkpoint boundary data differs from the seed");
  }
  s.assign_interior(v);
}

}  // namespace kwlab
