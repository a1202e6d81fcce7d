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
#include "hflow/himeno/stencil.hpp"

#include <string>

#include "hflow/common/error.hpp"

namespace hflow::himeno {

StencilRow make_stencil_row(const HimenoProblem& pr, std::size_t i, std::size_t j) {
  const std::size_t base = pr.dims.index(i, j, 1);
  StencilRow row{};
  for (int n = 0; n < 4; ++n) row.a[n] = pr.a[n].data() + base;
  for (int n = 0; n < 3; ++n) {
    row.b[n] = pr.b[n].data() + base;
    row.c[n] = pr.c[n].data() + base;
  }
  row.p = pr.p.data() + base;
  row.wrk1 = pr.wrk1.data() + base;
  row.bnd = pr.bnd.data() + base;
  row.stride_j = static_cast<std::ptrdiff_t>(pr.dims.stride_j());
  row.stride_i = static_cast<std::ptrdiff_t>(pr.dims.stride_i());
  row.count = pr.dims.nz - 2;
  row.omega = pr.omega;
  row.wrk2 = nullptr;
  row.ss = nullptr;
  return row;
}

CellUpdate<float> cell_update(const HimenoProblem& pr, std::size_t i, std::size_t j,
                              std::size_t k) {
  const GridDims& d = pr.dims;
  auto interior = [](std::size_t x, std::size_t n) { return x >= 1 && x + 2 <= n; };
  if (!interior(i, d.nx) || !interior(j, d.ny) || !interior(k, d.nz)) {
    throw OutOfRange("cell (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                     std::to_string(k) + ") is not an interior cell");
  }
  return stencil_cell<float>(make_stencil_row(pr, i, j), k - 1);
}

}  // namespace hflow::himeno
