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
#include <string>

#include "hflow/common/error.hpp"
#include "hflow/himeno/kernels.hpp"

namespace hflow::himeno {

std::string_view to_string(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::kScalar: return "scalar";
    case KernelIsa::kSse2: return "sse2";
    case KernelIsa::kAvx2: return "avx2";
  }
  return "unknown";
}

std::optional<KernelIsa> parse_isa(std::string_view name) {
  for (KernelIsa isa : {KernelIsa::kScalar, KernelIsa::kSse2, KernelIsa::kAvx2}) {
    if (name == to_string(isa)) return isa;
  }
  return std::nullopt;
}

std::vector<KernelIsa> compiled_isas() {
#if defined(__x86_64__)
  return {KernelIsa::kScalar, KernelIsa::kSse2, KernelIsa::kAvx2};
#else
  return {KernelIsa::kScalar};
#endif
}

bool isa_supported(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::kScalar:
      return true;
#if defined(__x86_64__)
    case KernelIsa::kSse2:
      return true;
    case KernelIsa::kAvx2:
      return __builtin_cpu_supports("avx2");
#endif
    default:
      return false;
  }
}

KernelIsa best_isa() {
  if (isa_supported(KernelIsa::kAvx2)) return KernelIsa::kAvx2;
  if (isa_supported(KernelIsa::kSse2)) return KernelIsa::kSse2;
  return KernelIsa::kScalar;
}

RowKernel row_kernel(KernelIsa isa) {
  if (!isa_supported(isa)) {
    throw InvalidArgument("kernel variant '" + std::string(to_string(isa)) +
                          "' is not supported on this CPU");
  }
  switch (isa) {
#if defined(__x86_64__)
    case KernelIsa::kSse2: return &kernels::row_sse2;
    case KernelIsa::kAvx2: return &kernels::row_avx2;
#endif
    default: return &kernels::row_scalar;
  }
}

}  // namespace hflow::himeno
