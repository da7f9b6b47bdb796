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

#ifndef KWLAB_SIMD_KERNELS_HPP_
#define KWLAB_SIMD_KERNELS_HPP_

#include <cstddef>

namespace kwlab::simd {

enum class Isa { scalar, avx2 };

// Structure-of-arrays views: one array per coefficient, indexed by node/point.
struct Vec3View {
  const double* x;
  const double* y;
  const double* z;
};
struct Vec3Out {
  double* x;
  double* y;
  double* z;
};
// Row-major 3x3 matrix entries m[3*r + c], each an array over nodes.
struct MatView {
  const double* m[9];
};

// A batch of quadrature points for the profile moments.
struct MomentBatch {
  int vdim = 0;
  int dim = 0;
  std::size_t count = 0;
  const double* w = nullptr;
  const double* a[4][3] = {};     // a[c][k][i]
  const double* g[4][4][3] = {};  // covariant gradient g[alpha][c][k][i]
};

// Full 4x4 row-major storage; only the leading vdim x vdim block is used.
struct MomentSums {
  double T[16] = {};  // sum w <a_c, a_d>
  double G[16] = {};  // sum w sum_alpha <grad_alpha a_c, grad_alpha a_d>
  double C[16] = {};  // sum w sum_e <[a_e, a_c], [a_e, a_d]>
};

struct KernelTable {
  Isa isa;
  // sum_{i in [b,e)} sum_c |T(i) a_c(i+s) - a_c(i)|^2
  double (*edge_energy)(const Vec3View* a, int ncomp, const MatView& T, std::ptrdiff_t s,
                        std::size_t b, std::size_t e);
  // out_c(i) += k (2 a_c(i) - T(i) a_c(i+s) - T(i-s)^t a_c(i-s))
  void (*edge_gradient)(const Vec3View* a, int ncomp, const MatView& T, std::ptrdiff_t s,
                        double k, std::size_t b, std::size_t e, const Vec3Out* out);
  // Returns sum_i sum_{b<c} |[a_b, a_c]|^2 and adds k sum_c [a_c, [a_b, a_c]] to out_b.
  double (*commutator_terms)(const Vec3View* a, int ncomp, double k, std::size_t b,
                             std::size_t e, const Vec3Out* out);
  // sum_i sum_{b<c} (|[a_b + d_b, a_c + d_c]|^2 - |[a_b, a_c]|^2), expanded so that
  // small d does not cancel against the base value
  double (*commutator_delta)(const Vec3View* a, const Vec3View* d, int ncomp, std::size_t b,
                             std::size_t e);
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*moments)(const MomentBatch& batch, MomentSums& sums);
};

bool isa_supported(Isa isa);
const char* isa_name(Isa isa);

// Table for a specific ISA; throws std::invalid_argument if unsupported here.
const KernelTable& kernels(Isa isa);

// Currently selected table. Defaults to the widest supported ISA.
const KernelTable& kernels();
Isa active_isa();
void set_active_isa(Isa isa);

}  // namespace kwlab::simd

#endif  // KWLAB_SIMD_KERNELS_HPP_
