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
#include <span>
#include <string>

#include "hflow/dataflow/graph.hpp"

namespace hflow::dataflow {

/// Cycles per item once every incoming stream is accounted for: each stream
/// delivers one word per cycle, so a stream needing w words per item
/// imposes an interval of w. Throws InvalidArgument if a stream does not
/// target the stage.
std::int64_t effective_ii(const StageSpec& stage, std::span<const StreamSpec> incoming);
std::int64_t effective_ii(const PipelineGraph& g, const StageSpec& stage);

/// width_bits / 8 * max_burst_beats.
std::int64_t burst_bytes(const PortSpec& port);

/// Share of bus time spent on data: burst / (burst + overhead beats).
double burst_efficiency(const PortSpec& port, const MemorySystemSpec& mem);

/// Sustainable bytes per kernel cycle of a port in isolation: the lesser of
/// the bus rate and what the outstanding-burst window covers in one round
/// trip, min(burst / (B + o), O * burst / (L + B + o)).
double port_bytes_per_cycle(const PortSpec& port, const MemorySystemSpec& mem);

double theoretical_peak_mflops(double flops_per_item, double freq_hz, std::int64_t ii);

/// Peak of the compute stage at its effective II under ideal memory.
double theoretical_peak_mflops(const PipelineGraph& g);

enum class EntityKind { kStage, kPort, kChannel };

std::string_view to_string(EntityKind k);

struct Throughput {
  double items_per_second = 0.0;
  EntityKind kind = EntityKind::kStage;
  std::string bottleneck;  // stage or port name, or the channel index
};

/// Closed-form steady-state rate: the minimum over stage, port and channel
/// service rates. Ties go to stages, and among stages to the compute stage.
/// Throws ValidationError for an invalid graph.
Throughput analytic_throughput(const PipelineGraph& g);

}  // namespace hflow::dataflow
