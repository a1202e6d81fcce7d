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

namespace hflow::himeno::kernels {

void row_scalar(const StencilRow& r) {
  for (std::size_t k = 0; k < r.count; ++k) {
    const CellUpdate<float> u = stencil_cell<float>(r, k);
    r.ss[k] = u.ss;
    r.wrk2[k] = u.value;
  }
}

}  // namespace hflow::himeno::kernels
