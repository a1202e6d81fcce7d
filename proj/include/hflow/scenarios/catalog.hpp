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

#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hflow/scenarios/kernel_config.hpp"

namespace hflow::scenarios {

struct Scenario {
  std::string name;
  std::string label;            // row label of the published table
  KernelConfig config;
  double published_mflops = 0.0;    // published figure, for reporting only
  double estimated_fmax_hz = 0.0;
};

/// The seven configurations, in ladder order.
std::span<const Scenario> catalog();

/// nullptr when unknown.
const Scenario* find_scenario(std::string_view name);

nlohmann::ordered_json catalog_json();

}  // namespace hflow::scenarios
