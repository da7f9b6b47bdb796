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

#ifndef KWLAB_RELAX_HPP_
#define KWLAB_RELAX_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "kwlab/errors.hpp"
#include "kwlab/fieldkit.hpp"

namespace kwlab {

struct LatticeGeometry {
  int dim = 4;
  std::array<int, 4> extent{1, 1, 1, 1};  // nodes per axis; unused axes stay 1
  double spacing = 1.0;
  Point origin{};                          // position of node (0, ..., 0)

  std::size_t node_count() const;
  // Cubic box [-side/2, side/2]^dim with `nodes` nodes per axis.
  static LatticeGeometry centered_box(int dim, int nodes, double side);
};

// Higgs values on a Cartesian grid, last axis fastest. The connection enters
// through SO(3) link transports computed once at construction; a two-node
// boundary layer is frozen.
class LatticeState {
 public:
  static constexpr int kBoundary = 2;

  LatticeState(const LatticeGeometry& g, int vdim, const GaugeConnection& A);
  LatticeState(const LatticeGeometry& g, const HiggsField& seed, const GaugeConnection& A);

  const LatticeGeometry& geometry() const { return geom_; }
  int dim() const { return geom_.dim; }
  int vdim() const { return vdim_; }
  std::size_t node_count() const { return count_; }
  std::ptrdiff_t stride(int axis) const { return stride_[axis]; }

  std::array<int, 4> coords(std::size_t idx) const;
  Point position(std::size_t idx) const;
  bool is_interior(std::size_t idx) const;

  HiggsValue value(std::size_t idx) const;
  // Only interior nodes may be changed once the state exists.
  void set_value(std::size_t idx, const HiggsValue& v);

  // Coefficient arrays: component c, coefficient k at values()[(3c + k) N + i].
  const std::vector<double>& values() const { return a_; }
  void assign_interior(const std::vector<double>& v);

  // Link transports for axis and hop length 1 or 2: row-major 3x3 entries.
  const std::vector<double>& links(int axis, int hop) const { return links_[axis][hop - 1]; }

 private:
  void build_links(const GaugeConnection& A);

  LatticeGeometry geom_;
  int vdim_;
  std::size_t count_;
  std::array<std::ptrdiff_t, 4> stride_{};
  std::vector<double> a_;
  std::array<std::array<std::vector<double>, 2>, 4> links_;
  std::vector<unsigned char> interior_;
};

// Discrete energy: h^n sum_axis sum_edges [(4/3)|R a(x+h) - a(x)|^2 - (1/12)|R2 a(x+2h) - a(x)|^2]/h^2
// plus h^n sum_interior sum_{b<c} |[a_b, a_c]|^2. Non-negative.
double energy(const LatticeState& s);

struct LatticeGradient {
  std::vector<double> kinetic;    // same layout as values(); zero on the boundary
  std::vector<double> potential;
  std::vector<double> total() const;
};

// d energy / d a(x) divided by h^n: 2 (grad^t grad a + [a_c, [a, a_c]]) at interior nodes.
LatticeGradient gradient_parts(const LatticeState& s);
std::vector<double> gradient(const LatticeState& s);

// Largest per-node norm of a field in values() layout.
double max_node_norm(const LatticeState& s, const std::vector<double>& f);

// energy(values + d) - energy(values), evaluated without cancellation.
double energy_change(const LatticeState& s, const LatticeGradient& g, const std::vector<double>& d);

struct FlowStep {
  int iteration = 0;
  double energy = 0.0;     // energy after the step (accumulated exact changes)
  double max_gradient = 0.0;
  double step = 0.0;
  int halvings = 0;
};

struct FlowResult {
  bool converged = false;
  int iterations = 0;
  std::vector<FlowStep> trace;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, std::vector<FlowStep> t)
      : NumericalError(what), trace(std::move(t)) {}
  std::vector<FlowStep> trace;
};

using FlowObserver = std::function<void(const FlowStep&, const LatticeState&)>;

// Gradient descent with Barzilai-Borwein steps; a step is halved until the
// energy does not increase. Throws NonConvergenceError at the cap. The
// observer sees every accepted step.
FlowResult flow(LatticeState& s, double tol, int max_iters, const FlowObserver& observe = {});

// Adds rel * sup|a| * prod_axis sin(pi (i - 1)/(N - 3)) times a fixed unit
// pattern per component at interior nodes.
void add_smooth_perturbation(LatticeState& s, double rel);

// RMS over interior nodes of |a - b| per node.
double interior_rms_difference(const LatticeState& s, const std::vector<double>& other);

// Checkpoint layout (little-endian):
//   8 bytes  magic "KWRELAX1"
//   u32 dim, u32 vdim, u32 extent[4]
//   f64 spacing, f64 origin[4]
//   f64 values, node-major (row-major grid, last axis fastest), then
//       component c, coefficient k within each node
void save_checkpoint(const std::string& path, const LatticeState& s);
// Loads values into s; geometry and vdim must match.
void load_checkpoint(const std::string& path, LatticeState& s);

}  // namespace kwlab

#endif  // KWLAB_RELAX_HPP_
