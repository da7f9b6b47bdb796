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

// Shared helpers for the kernel translation units (not installed).

#ifndef KWLAB_SIMD_KERNELS_IMPL_HPP_
#define KWLAB_SIMD_KERNELS_IMPL_HPP_

#include "kwlab/simd/kernels.hpp"

namespace kwlab::simd {

inline void bracket(const double* u, const double* v, double* w) {
  w[0] = 2.0 * (u[1] * v[2] - u[2] * v[1]);
  w[1] = 2.0 * (u[2] * v[0] - u[0] * v[2]);
  w[2] = 2.0 * (u[0] * v[1] - u[1] * v[0]);
}

// Kernels fill only the upper triangle (c <= d); mirror it.
inline void symmetrize(MomentSums& S, int vd) {
  for (int c = 0; c < vd; ++c)
    for (int d = 0; d < c; ++d) {
      S.T[4 * c + d] = S.T[4 * d + c];
      S.G[4 * c + d] = S.G[4 * d + c];
      S.C[4 * c + d] = S.C[4 * d + c];
    }
}

const KernelTable& scalar_table();
#if defined(KWLAB_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace kwlab::simd

#endif  // KWLAB_SIMD_KERNELS_IMPL_HPP_
