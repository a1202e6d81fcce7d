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
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hflow/dataflow/graph.hpp"
#include "hflow/sim/profile.hpp"

namespace hflow::guidance {

enum class Severity { kHealthy, kAdvice, kWarning, kCritical };

std::string_view to_string(Severity s);  // upper case, as printed
std::optional<Severity> parse_severity(std::string_view s);

struct Finding {
  std::string rule_id;      // R1 .. R8
  Severity severity = Severity::kHealthy;
  std::string entity_kind;  // graph, stage, stream, port or channel
  std::string entity;
  std::string message;
  std::optional<double> metric;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Rule thresholds. Defaults sit between the healthy and problematic
/// values reported for the hardware this models.
struct Thresholds {
  double small_burst_advice_bytes = 1024;   // R3
  double small_burst_warning_bytes = 64;    // R3
  double narrow_port_bits = 512;            // R4
  double low_utilization_advice = 0.5;      // R5
  double low_utilization_critical = 0.01;   // R5
  double stream_stall_rate = 0.19;          // R6
  double memory_stall_critical = 0.5;       // R8
};

/// Reads the keys present in j; unknown keys raise ParseError.
Thresholds thresholds_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const Thresholds& t);

struct RuleInfo {
  std::string_view id;
  std::string_view name;
};
const std::vector<RuleInfo>& registered_rules();

/// Findings ordered by severity (most severe first), then entity kind,
/// entity name and rule id. Throws InvalidArgument when the profile does
/// not come from this graph.
///
///   R1 shared-port      port with more than one logical buffer
///   R2 single-channel   every port on one channel while others sit idle
///   R3 small-burst      burst bytes below the advice / warning thresholds
///   R4 narrow-port      port narrower than 512 bits
///   R5 low-utilization  port bandwidth share of its channel's peak
///   R6 stream-stall     stream stalled for a large share of the run
///   R7 ii-inflation     stream forcing its consumer above its base II
///   R8 memory-stall     compute stage blocked on memory most of the run
std::vector<Finding> run_rules(const dataflow::PipelineGraph& g, const sim::SimProfile& p,
                               const Thresholds& t = {});

/// One line per finding: "SEVERITY rule_id kind name: message [metric]".
std::string format_text(const std::vector<Finding>& findings);
nlohmann::ordered_json to_json(const std::vector<Finding>& findings);
std::vector<Finding> findings_from_json(const nlohmann::json& j);

/// True if any finding is at least as severe as s.
bool any_at_least(const std::vector<Finding>& findings, Severity s);

}  // namespace hflow::guidance
