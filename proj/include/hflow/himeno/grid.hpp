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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hflow::himeno {

/// Grid points per axis, including one boundary layer on each face.
/// Storage is row-major with k (the z axis) fastest.
struct GridDims {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t nz = 0;

  std::size_t cells() const { return nx * ny * nz; }
  std::uint64_t interior_cells() const {
    return static_cast<std::uint64_t>(nx - 2) * (ny - 2) * (nz - 2);
  }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * ny + j) * nz + k;
  }
  std::size_t stride_j() const { return nz; }
  std::size_t stride_i() const { return ny * nz; }

  friend bool operator==(const GridDims&, const GridDims&) = default;
};

/// Builds checked dimensions; throws InvalidDimension when any axis is < 3.
GridDims make_dims(std::size_t nx, std::size_t ny, std::size_t nz);

/// One single-precision value per grid point.
class Field {
 public:
  Field() = default;
  explicit Field(GridDims dims, float fill = 0.0f);

  const GridDims& dims() const { return dims_; }

  float& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return values_[dims_.index(i, j, k)];
  }
  float operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[dims_.index(i, j, k)];
  }

  std::span<float> values() { return values_; }
  std::span<const float> values() const { return values_; }
  float* data() { return values_.data(); }
  const float* data() const { return values_.data(); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  GridDims dims_;
  std::vector<float> values_;
};

/// The benchmark state. `a` has four coefficients per cell, `b` and `c`
/// three; the remaining fields are scalar. `wrk2` receives each sweep's
/// updated values before they are copied back into `p`.
struct HimenoProblem {
  GridDims dims;
  std::array<Field, 4> a;
  std::array<Field, 3> b;
  std::array<Field, 3> c;
  Field p;
  Field wrk1;
  Field bnd;
  Field wrk2;
  float omega = 0.8f;
};

/// Reference initialization: a = (1, 1, 1, 1/6), b = 0, c = 1,
/// p(i, j, k) = k^2 / (nz - 1)^2, wrk1 = wrk2 = 0, bnd = 1, omega = 0.8.
HimenoProblem init_problem(GridDims dims);

/// Fills p with a constant; with the reference coefficients this makes the
/// problem a fixed point of the sweep.
void fill_uniform_pressure(HimenoProblem& problem, float value);

}  // namespace hflow::himeno
