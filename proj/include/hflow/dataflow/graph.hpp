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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hflow::dataflow {

/// One pipelined dataflow stage. Counts are signed so that a malformed
/// document can be reported by validate_graph instead of wrapping.
struct StageSpec {
  std::string name;
  std::int64_t base_ii = 1;           // cycles per item when unconstrained
  std::int64_t pipeline_latency = 1;  // cycles from start to result
  std::int64_t items = 0;             // items per kernel invocation
};

/// Bounded FIFO between two stages. The consumer pops at most one word per
/// cycle and needs words_per_item words before it can start an item; the
/// producer emits the same number of words per item, one per cycle.
struct StreamSpec {
  std::string name;
  std::string producer;
  std::string consumer;
  std::int64_t width_bits = 32;
  std::int64_t depth = 16;
  std::int64_t words_per_item = 1;
};

enum class Direction { kRead, kWrite };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

/// A field mapped onto a memory port.
struct LogicalBuffer {
  std::string name;
  std::int64_t bytes_per_item = 0;
  std::int64_t bytes_per_invocation = 0;  // e.g. a single result word
  std::int64_t footprint_bytes = 0;       // device allocation
};

struct PortSpec {
  std::string name;
  Direction direction = Direction::kRead;
  std::int64_t width_bits = 512;
  std::int64_t max_burst_beats = 1;
  std::int64_t outstanding = 1;
  std::int64_t channel = 0;
  std::string stage;  // the stage that consumes (read) or produces (write)
  std::vector<LogicalBuffer> buffers;

  std::int64_t bytes_per_item() const;
  std::int64_t bytes_per_invocation() const;
};

/// HBM-style memory. Channel bandwidth is given in controller cycles so that
/// it stays fixed in bytes per second when the kernel clock changes; access
/// latency and burst overhead are in kernel cycles.
struct MemorySystemSpec {
  std::int64_t channel_count = 32;
  std::int64_t chunk_bytes = std::int64_t{256} << 20;
  double per_channel_bytes_per_cycle = 14.375e9 / 450e6;
  double controller_clock_hz = 450e6;
  std::int64_t access_latency_cycles = 64;
  std::int64_t overhead_beats = 1;

  double channel_bytes_per_second() const {
    return per_channel_bytes_per_cycle * controller_clock_hz;
  }

  friend bool operator==(const MemorySystemSpec&, const MemorySystemSpec&) = default;
};

struct ClockSpec {
  double freq_hz = 300e6;
};

struct PipelineGraph {
  std::string name;
  std::vector<StageSpec> stages;
  std::vector<StreamSpec> streams;
  std::vector<PortSpec> ports;
  MemorySystemSpec memory;
  ClockSpec clock;
  double flops_per_item = 0.0;
  std::string compute_stage;  // the stage that carries flops_per_item
  // Calibration: extra spacing factor on the compute stage's base II.
  double steady_cycles_per_item = 1.0;

  const StageSpec* find_stage(std::string_view name) const;
  const StreamSpec* find_stream(std::string_view name) const;
  const PortSpec* find_port(std::string_view name) const;
  std::optional<std::size_t> stage_index(std::string_view name) const;

  std::vector<StreamSpec> incoming(std::string_view stage) const;
  std::vector<StreamSpec> outgoing(std::string_view stage) const;
};

/// Every broken invariant, each message naming its entity. Empty iff valid.
std::vector<std::string> validate_graph(const PipelineGraph& g);

/// Throws ValidationError carrying validate_graph's output when non-empty.
void require_valid(const PipelineGraph& g);

/// Soft problems that do not block simulation, such as a buffer larger than
/// one memory chunk.
std::vector<std::string> capacity_warnings(const PipelineGraph& g);

/// Stage indices with producers before consumers; ties keep declaration
/// order. Throws ValidationError on a cycle.
std::vector<std::size_t> topological_order(const PipelineGraph& g);

/// Copy of g with every stage processing n items.
PipelineGraph with_items(PipelineGraph g, std::int64_t n);

}  // namespace hflow::dataflow
