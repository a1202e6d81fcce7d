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

#include "hflow/dataflow/analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "hflow/common/error.hpp"

namespace hflow::dataflow {

std::int64_t effective_ii(const StageSpec& stage, std::span<const StreamSpec> incoming) {
  std::int64_t ii = stage.base_ii;
  for (const auto& s : incoming) {
    if (s.consumer != stage.name) {
      throw InvalidArgument("stream '" + s.name + "' does not feed stage '" + stage.name + "'");
    }
    ii = std::max(ii, s.words_per_item);
  }
  return ii;
}

std::int64_t effective_ii(const PipelineGraph& g, const StageSpec& stage) {
  const auto in = g.incoming(stage.name);
  return effective_ii(stage, in);
}

std::int64_t burst_bytes(const PortSpec& port) {
  return port.width_bits / 8 * port.max_burst_beats;
}

double burst_efficiency(const PortSpec& port, const MemorySystemSpec& mem) {
  const double burst = static_cast<double>(burst_bytes(port));
  return burst / (burst + static_cast<double>(port.width_bits / 8 * mem.overhead_beats));
}

double port_bytes_per_cycle(const PortSpec& port, const MemorySystemSpec& mem) {
  const double burst = static_cast<double>(burst_bytes(port));
  const double beats = static_cast<double>(port.max_burst_beats);
  const double ovh = static_cast<double>(mem.overhead_beats);
  const double lat = static_cast<double>(mem.access_latency_cycles);
  const double bus = burst / (beats + ovh);
  const double window = static_cast<double>(port.outstanding) * burst / (lat + beats + ovh);
  return std::min(bus, window);
}

double theoretical_peak_mflops(double flops_per_item, double freq_hz, std::int64_t ii) {
  return flops_per_item * freq_hz / static_cast<double>(ii) / 1e6;
}

double theoretical_peak_mflops(const PipelineGraph& g) {
  const StageSpec* c = g.find_stage(g.compute_stage);
  if (!c) throw InvalidArgument("graph has no compute stage");
  return theoretical_peak_mflops(g.flops_per_item, g.clock.freq_hz, effective_ii(g, *c));
}

std::string_view to_string(EntityKind k) {
  switch (k) {
    case EntityKind::kStage: return "stage";
    case EntityKind::kPort: return "port";
    case EntityKind::kChannel: return "channel";
  }
  return "?";
}

Throughput analytic_throughput(const PipelineGraph& g) {
  require_valid(g);
  Throughput best{std::numeric_limits<double>::infinity(), EntityKind::kStage, ""};
  auto consider = [&best](double rate, EntityKind kind, std::string name) {
    if (rate < best.items_per_second) best = {rate, kind, std::move(name)};
  };

  const double f = g.clock.freq_hz;
  // Compute stage first so that it wins ties.
  if (const StageSpec* c = g.find_stage(g.compute_stage)) {
    consider(f / (static_cast<double>(effective_ii(g, *c)) * g.steady_cycles_per_item),
             EntityKind::kStage, c->name);
  }
  for (const auto& s : g.stages) {
    if (s.name == g.compute_stage) continue;
    consider(f / static_cast<double>(effective_ii(g, s)), EntityKind::kStage, s.name);
  }

  std::map<std::int64_t, std::int64_t> channel_bytes;
  for (const auto& p : g.ports) {
    const std::int64_t bpi = p.bytes_per_item();
    if (bpi == 0) continue;
    consider(port_bytes_per_cycle(p, g.memory) * f / static_cast<double>(bpi),
             EntityKind::kPort, p.name);
    channel_bytes[p.channel] += bpi;
  }
  for (const auto& [ch, bytes] : channel_bytes) {
    consider(g.memory.channel_bytes_per_second() / static_cast<double>(bytes),
             EntityKind::kChannel, std::to_string(ch));
  }
  if (g.stages.empty()) best.items_per_second = 0.0;
  return best;
}

}  // namespace hflow::dataflow
