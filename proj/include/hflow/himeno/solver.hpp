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

#include <cstdint>
#include <vector>

#include "hflow/himeno/grid.hpp"
#include "hflow/himeno/kernels.hpp"

namespace hflow::himeno {

struct SweepOptions {
  KernelIsa isa = best_isa();
  unsigned threads = 1;
  std::size_t gosa_width = kDefaultGosaWidth;
};

struct SweepResult {
  float gosa = 0.0f;
  std::uint64_t cells_updated = 0;
};

/// Point-Jacobi sweep with a reusable residual buffer. Planes may be split
/// across threads; the residual is always reduced serially in k-fastest
/// order, so results do not depend on the thread count or kernel variant.
class JacobiSweeper {
 public:
  explicit JacobiSweeper(SweepOptions options = {});

  /// Writes the interior of wrk2; p and every boundary value are untouched.
  SweepResult sweep(HimenoProblem& problem);

  const SweepOptions& options() const { return options_; }

 private:
  SweepOptions options_;
  RowKernel kernel_;
  std::vector<float> ss_;
};

SweepResult jacobi_sweep(HimenoProblem& problem, const SweepOptions& options = {});

/// p interior <- wrk2 interior.
void copy_back(HimenoProblem& problem);

struct BenchmarkResult {
  std::vector<float> gosa_trace;
  double elapsed_seconds = 0.0;
  double mflops = 0.0;
};

/// Runs `iterations` x (sweep + copy_back) on a freshly initialized problem.
/// When `final_state` is given it receives the problem after the last
/// iteration.
BenchmarkResult run_benchmark(GridDims dims, int iterations,
                              const SweepOptions& options = {},
                              HimenoProblem* final_state = nullptr);

/// 34 flops per interior cell per iteration.
std::uint64_t total_flops(GridDims dims, std::uint64_t iterations);

/// Throws InvalidArgument when elapsed_seconds <= 0.
double mflops(GridDims dims, std::uint64_t iterations, double elapsed_seconds);

}  // namespace hflow::himeno
