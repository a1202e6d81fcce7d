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
#include "hflow/himeno/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <thread>

#include "hflow/common/error.hpp"

namespace hflow::himeno {

JacobiSweeper::JacobiSweeper(SweepOptions options)
    : options_(options), kernel_(row_kernel(options.isa)) {
  if (options_.gosa_width == 0) throw InvalidArgument("gosa_width must be >= 1");
  if (options_.threads == 0) options_.threads = 1;
}

SweepResult JacobiSweeper::sweep(HimenoProblem& pr) {
  const GridDims d = pr.dims;
  const std::size_t row_len = d.nz - 2;
  const std::size_t rows_per_plane = d.ny - 2;
  ss_.resize(d.interior_cells());

  auto run_planes = [&](std::size_t i_begin, std::size_t i_end) {
    for (std::size_t i = i_begin; i < i_end; ++i) {
      for (std::size_t j = 1; j + 1 < d.ny; ++j) {
        StencilRow row = make_stencil_row(pr, i, j);
        row.wrk2 = pr.wrk2.data() + d.index(i, j, 1);
        row.ss = ss_.data() + ((i - 1) * rows_per_plane + (j - 1)) * row_len;
        kernel_(row);
      }
    }
  };

  const std::size_t planes = d.nx - 2;
  const std::size_t workers = std::min<std::size_t>(options_.threads, planes);
  if (workers <= 1) {
    run_planes(1, d.nx - 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t per = (planes + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
      const std::size_t lo = 1 + w * per;
      const std::size_t hi = std::min(d.nx - 1, lo + per);
      if (lo < hi) pool.emplace_back(run_planes, lo, hi);
    }
    run_planes(1, std::min(d.nx - 1, 1 + per));
  }

  StridedSquareSum<float> acc(options_.gosa_width);
  for (float ss : ss_) acc.add(ss);
  return {acc.total(), d.interior_cells()};
}

SweepResult jacobi_sweep(HimenoProblem& problem, const SweepOptions& options) {
  return JacobiSweeper(options).sweep(problem);
}

void copy_back(HimenoProblem& pr) {
  const GridDims d = pr.dims;
  const std::size_t row_bytes = (d.nz - 2) * sizeof(float);
  for (std::size_t i = 1; i + 1 < d.nx; ++i) {
    for (std::size_t j = 1; j + 1 < d.ny; ++j) {
      const std::size_t at = d.index(i, j, 1);
      std::memcpy(pr.p.data() + at, pr.wrk2.data() + at, row_bytes);
    }
  }
}

BenchmarkResult run_benchmark(GridDims dims, int iterations, const SweepOptions& options,
                              HimenoProblem* final_state) {
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  HimenoProblem pr = init_problem(dims);
  JacobiSweeper sweeper(options);

  BenchmarkResult out;
  out.gosa_trace.reserve(static_cast<std::size_t>(iterations));
  const auto start = std::chrono::steady_clock::now();
  for (int n = 0; n < iterations; ++n) {
    out.gosa_trace.push_back(sweeper.sweep(pr).gosa);
    copy_back(pr);
  }
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  // A clock tick of zero would be rejected by mflops(); clamp to 1 ns.
  out.elapsed_seconds = std::max(took.count(), 1e-9);
  out.mflops = mflops(pr.dims, static_cast<std::uint64_t>(iterations), out.elapsed_seconds);
  if (final_state != nullptr) *final_state = std::move(pr);
  return out;
}

std::uint64_t total_flops(GridDims dims, std::uint64_t iterations) {
  return static_cast<std::uint64_t>(kFlopsPerCell) * dims.interior_cells() * iterations;
}

double mflops(GridDims dims, std::uint64_t iterations, double elapsed_seconds) {
  if (!(elapsed_seconds > 0.0)) {
    throw InvalidArgument("elapsed time must be positive");
  }
  return static_cast<double>(total_flops(dims, iterations)) / elapsed_seconds / 1e6;
}

}  // namespace hflow::himeno
