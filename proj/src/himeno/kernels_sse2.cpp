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
#include "hflow/himeno/kernels.hpp"

#if defined(__x86_64__)
#include <emmintrin.h>

namespace hflow::himeno::kernels {
namespace {

struct Sse2 {
  static constexpr std::size_t kLanes = 4;
  static __m128 load(const float* p) { return _mm_loadu_ps(p); }
  static void store(float* p, __m128 v) { _mm_storeu_ps(p, v); }
  static __m128 set1(float x) { return _mm_set1_ps(x); }
  static __m128 add(__m128 a, __m128 b) { return _mm_add_ps(a, b); }
  static __m128 sub(__m128 a, __m128 b) { return _mm_sub_ps(a, b); }
  static __m128 mul(__m128 a, __m128 b) { return _mm_mul_ps(a, b); }
};

#include "simd_row.inl"

}  // namespace

void row_sse2(const StencilRow& row) { simd_row<Sse2>(row); }

}  // namespace hflow::himeno::kernels
#endif
