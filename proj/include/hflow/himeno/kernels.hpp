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

#include <optional>
#include <string_view>
#include <vector>

#include "hflow/himeno/stencil.hpp"

namespace hflow::himeno {

// Row kernels. Every variant writes wrk2 and ss for the `count` cells of a
// StencilRow and must be bit-identical to the scalar reference.
enum class KernelIsa { kScalar, kSse2, kAvx2 };

using RowKernel = void (*)(const StencilRow& row);

std::string_view to_string(KernelIsa isa);
std::optional<KernelIsa> parse_isa(std::string_view name);

/// Variants compiled into this binary.
std::vector<KernelIsa> compiled_isas();
/// True when compiled in and the running CPU supports it.
bool isa_supported(KernelIsa isa);
/// Widest supported variant.
KernelIsa best_isa();

/// Throws InvalidArgument if the variant is not supported here.
RowKernel row_kernel(KernelIsa isa);

namespace kernels {
void row_scalar(const StencilRow& row);
#if defined(__x86_64__)
void row_sse2(const StencilRow& row);
void row_avx2(const StencilRow& row);
#endif
}  // namespace kernels

}  // namespace hflow::himeno
