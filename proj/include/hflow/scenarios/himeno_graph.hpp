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

#include <string>

#include "hflow/dataflow/graph.hpp"
#include "hflow/himeno/grid.hpp"
#include "hflow/scenarios/kernel_config.hpp"

namespace hflow::scenarios {

/// Five-stage Himeno kernel: read -> package -> jacobi -> {write, gosa}.
///
/// read pulls the six input fields from memory and streams them to
/// package, which forwards a, b, c and a packed 21-float stencil word
/// (19 p values, wrk1, bnd) to jacobi. jacobi sends each new value to write
/// and its correction term to gosa, which writes one float per invocation.
/// Scalar streams carry one float per word, so a needs 4 words per cell and
/// b, c need 3; chunked streams carry the whole cell in one word.
///
/// Without split_ports the inputs share one read port (gmem_in) and the
/// outputs use gmem_out and gosa_out; with it every field gets its own port
/// named after the field. On 512-bit configurations a field that is not
/// packed falls back to a 32-bit single-beat port.
///
/// Throws ValidationError for an invalid config.
dataflow::PipelineGraph build_himeno_graph(const KernelConfig& cfg, const himeno::GridDims& dims,
                                           std::string name = "himeno");

inline constexpr int kJacobiLatency = 32;
inline constexpr int kFaddLatency = 11;

}  // namespace hflow::scenarios
