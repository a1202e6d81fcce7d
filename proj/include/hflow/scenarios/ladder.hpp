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
#include <string>
#include <vector>

#include "hflow/himeno/grid.hpp"
#include "hflow/scenarios/catalog.hpp"
#include "hflow/sim/profile.hpp"

namespace hflow::scenarios {

struct LadderOptions {
  Calibration calibration;
  std::optional<double> freq_override;  // replaces every scenario's clock
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct LadderRow {
  std::string scenario;
  std::string label;
  double simulated_mflops = 0.0;
  double published_mflops = 0.0;
  std::string bottleneck;  // analytic limiter, "kind name"
  double memory_stall_fraction = 0.0;
  sim::SimProfile profile;
};

/// One simulate_iterations run per scenario, rows in catalog order.
std::vector<LadderRow> ladder(const himeno::GridDims& dims, std::uint64_t iterations,
                              const LadderOptions& options = {});

/// Aligned text table.
std::string format_ladder(const std::vector<LadderRow>& rows);
std::string ladder_csv(const std::vector<LadderRow>& rows);

}  // namespace hflow::scenarios
