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
// Lane-wise copy of stencil_cell(). Included by the per-ISA translation
// units inside an anonymous namespace; V supplies load/store/add/sub/mul.
// The remainder of a row is delegated to the out-of-line scalar kernel so
// no inline code compiled with wider ISA flags leaks into shared symbols.

template <typename V>
void simd_row(const StencilRow& r) {
  constexpr std::size_t kLanes = V::kLanes;
  const std::ptrdiff_t sj = r.stride_j;
  const std::ptrdiff_t si = r.stride_i;
  const auto omega = V::set1(r.omega);

  std::size_t k = 0;
  for (; k + kLanes <= r.count; k += kLanes) {
    const float* p = r.p + k;
    auto at = [p](std::ptrdiff_t off) { return V::load(p + off); };
    auto ld = [k](const float* f) { return V::load(f + k); };

    auto s0 = V::mul(ld(r.a[0]), at(si));
    s0 = V::add(s0, V::mul(ld(r.a[1]), at(sj)));
    s0 = V::add(s0, V::mul(ld(r.a[2]), at(1)));
    s0 = V::add(s0, V::mul(ld(r.b[0]),
                           V::add(V::sub(V::sub(at(si + sj), at(si - sj)), at(-si + sj)),
                                  at(-si - sj))));
    s0 = V::add(s0, V::mul(ld(r.b[1]),
                           V::add(V::sub(V::sub(at(sj + 1), at(-sj + 1)), at(sj - 1)),
                                  at(-sj - 1))));
    s0 = V::add(s0, V::mul(ld(r.b[2]),
                           V::add(V::sub(V::sub(at(si + 1), at(-si + 1)), at(si - 1)),
                                  at(-si - 1))));
    s0 = V::add(s0, V::mul(ld(r.c[0]), at(-si)));
    s0 = V::add(s0, V::mul(ld(r.c[1]), at(-sj)));
    s0 = V::add(s0, V::mul(ld(r.c[2]), at(-1)));
    s0 = V::add(s0, ld(r.wrk1));

    const auto centre = at(0);
    const auto ss = V::mul(V::sub(V::mul(s0, ld(r.a[3])), centre), ld(r.bnd));
    V::store(r.ss + k, ss);
    V::store(r.wrk2 + k, V::add(centre, V::mul(omega, ss)));
  }

  if (k < r.count) {
    StencilRow tail = r;
    for (auto& f : tail.a) f += k;
    for (auto& f : tail.b) f += k;
    for (auto& f : tail.c) f += k;
    tail.p += k;
    tail.wrk1 += k;
    tail.bnd += k;
    tail.wrk2 += k;
    tail.ss += k;
    tail.count -= k;
    kernels::row_scalar(tail);
  }
}
