// Copyright 2026 The hflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "hflow/himeno/grid.hpp"

namespace hflow::himeno {

inline constexpr int kFlopsPerCell = 34;
inline constexpr std::size_t kDefaultGosaWidth = 11;

/// Pointers to one interior row (fixed i, j) starting at k = 1, plus the
/// strides needed to reach the 18 neighbours of each cell.
struct StencilRow {
  const float* a[4];
  const float* b[3];
  const float* c[3];
  const float* p;
  const float* wrk1;
  const float* bnd;
  std::ptrdiff_t stride_j;
  std::ptrdiff_t stride_i;
  std::size_t count;
  float omega;
  float* wrk2;  // row output, aligned with p
  float* ss;    // one correction term per cell, packed
};

/// Row view of interior row (i, j); the output pointers are left null.
StencilRow make_stencil_row(const HimenoProblem& problem, std::size_t i,
                            std::size_t j);

template <typename Real>
struct CellUpdate {
  Real ss;
  Real value;
};

/// The 19-point update of cell `k` of a row: 12 multiplies and 20
/// add/subtracts, in the reference evaluation order. `Real` may be an
/// instrumented type; every SIMD kernel must reproduce this order lane-wise.
template <typename Real>
CellUpdate<Real> stencil_cell(const StencilRow& r, std::size_t k) {
  const std::ptrdiff_t sj = r.stride_j;
  const std::ptrdiff_t si = r.stride_i;
  const float* p = r.p + k;
  auto at = [p](std::ptrdiff_t off) { return Real(p[off]); };

  Real s0 = Real(r.a[0][k]) * at(si);
  s0 = s0 + Real(r.a[1][k]) * at(sj);
  s0 = s0 + Real(r.a[2][k]) * at(1);
  s0 = s0 + Real(r.b[0][k]) * (((at(si + sj) - at(si - sj)) - at(-si + sj)) + at(-si - sj));
  s0 = s0 + Real(r.b[1][k]) * (((at(sj + 1) - at(-sj + 1)) - at(sj - 1)) + at(-sj - 1));
  s0 = s0 + Real(r.b[2][k]) * (((at(si + 1) - at(-si + 1)) - at(si - 1)) + at(-si - 1));
  s0 = s0 + Real(r.c[0][k]) * at(-si);
  s0 = s0 + Real(r.c[1][k]) * at(-sj);
  s0 = s0 + Real(r.c[2][k]) * at(-1);
  s0 = s0 + Real(r.wrk1[k]);

  const Real centre = at(0);
  const Real ss = (s0 * Real(r.a[3][k]) - centre) * Real(r.bnd[k]);
  return {ss, centre + Real(r.omega) * ss};
}

/// Residual accumulator with `width` interleaved partial sums: the n-th
/// squared term (in k-fastest cell order) lands in slot n % width, and the
/// slots are summed in index order. Two flops per cell (square and add).
template <typename Real>
class StridedSquareSum {
 public:
  explicit StridedSquareSum(std::size_t width) : partial_(width, Real(0.0f)) {}

  void add(Real ss) {
    partial_[slot_] = partial_[slot_] + ss * ss;
    if (++slot_ == partial_.size()) slot_ = 0;
  }

  Real total() const {
    Real sum(0.0f);
    for (const Real& x : partial_) sum = sum + x;
    return sum;
  }

 private:
  std::vector<Real> partial_;
  std::size_t slot_ = 0;
};

/// Checked single-cell update; throws OutOfRange for boundary or
/// out-of-grid indices.
CellUpdate<float> cell_update(const HimenoProblem& problem, std::size_t i,
                              std::size_t j, std::size_t k);

}  // namespace hflow::himeno
