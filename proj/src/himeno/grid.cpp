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
#include "hflow/himeno/grid.hpp"

#include <string>

#include "hflow/common/error.hpp"

namespace hflow::himeno {

GridDims make_dims(std::size_t nx, std::size_t ny, std::size_t nz) {
  if (nx < 3 || ny < 3 || nz < 3) {
    throw InvalidDimension("grid dims must be >= 3 on every axis, got (" +
                           std::to_string(nx) + ", " + std::to_string(ny) + ", " +
                           std::to_string(nz) + ")");
  }
  return GridDims{nx, ny, nz};
}

Field::Field(GridDims dims, float fill) : dims_(dims), values_(dims.cells(), fill) {}

HimenoProblem init_problem(GridDims dims) {
  dims = make_dims(dims.nx, dims.ny, dims.nz);
  HimenoProblem pr;
  pr.dims = dims;
  for (int n = 0; n < 3; ++n) pr.a[n] = Field(dims, 1.0f);
  pr.a[3] = Field(dims, 1.0f / 6.0f);
  for (auto& f : pr.b) f = Field(dims, 0.0f);
  for (auto& f : pr.c) f = Field(dims, 1.0f);
  pr.wrk1 = Field(dims, 0.0f);
  pr.wrk2 = Field(dims, 0.0f);
  pr.bnd = Field(dims, 1.0f);
  pr.omega = 0.8f;

  pr.p = Field(dims);
  const float denom = static_cast<float>((dims.nz - 1) * (dims.nz - 1));
  for (std::size_t i = 0; i < dims.nx; ++i) {
    for (std::size_t j = 0; j < dims.ny; ++j) {
      for (std::size_t k = 0; k < dims.nz; ++k) {
        pr.p(i, j, k) = static_cast<float>(k * k) / denom;
      }
    }
  }
  return pr;
}

void fill_uniform_pressure(HimenoProblem& problem, float value) {
  for (float& v : problem.p.values()) v = value;
}

}  // namespace hflow::himeno
