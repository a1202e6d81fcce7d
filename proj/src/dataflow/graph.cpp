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

#include "hflow/dataflow/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "hflow/common/error.hpp"

namespace hflow::dataflow {

std::string_view to_string(Direction d) {
  return d == Direction::kRead ? "read" : "write";
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "read") return Direction::kRead;
  if (s == "write") return Direction::kWrite;
  return std::nullopt;
}

std::int64_t PortSpec::bytes_per_item() const {
  std::int64_t sum = 0;
  for (const auto& b : buffers) sum += b.bytes_per_item;
  return sum;
}

std::int64_t PortSpec::bytes_per_invocation() const {
  std::int64_t sum = 0;
  for (const auto& b : buffers) sum += b.bytes_per_invocation;
  return sum;
}

namespace {

template <typename T>
const T* find_named(const std::vector<T>& v, std::string_view name) {
  for (const auto& x : v) {
    if (x.name == name) return &x;
  }
  return nullptr;
}

bool valid_port_width(std::int64_t w) {
  return w == 32 || w == 64 || w == 128 || w == 256 || w == 512;
}

// Kahn's algorithm over stages that exist; returns the order found so far,
// which is short of stages.size() when there is a cycle.
std::vector<std::size_t> kahn(const PipelineGraph& g) {
  const std::size_t n = g.stages.size();
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& s : g.streams) {
    const auto p = g.stage_index(s.producer);
    const auto c = g.stage_index(s.consumer);
    if (!p || !c || *p == *c) continue;
    out[*p].push_back(*c);
    ++indegree[*c];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (std::size_t j : out[i]) {
      if (--indegree[j] == 0) ready.push(j);
    }
  }
  return order;
}

}  // namespace

const StageSpec* PipelineGraph::find_stage(std::string_view n) const {
  return find_named(stages, n);
}
const StreamSpec* PipelineGraph::find_stream(std::string_view n) const {
  return find_named(streams, n);
}
const PortSpec* PipelineGraph::find_port(std::string_view n) const {
  return find_named(ports, n);
}

std::optional<std::size_t> PipelineGraph::stage_index(std::string_view n) const {
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (stages[i].name == n) return i;
  }
  return std::nullopt;
}

std::vector<StreamSpec> PipelineGraph::incoming(std::string_view stage) const {
  std::vector<StreamSpec> r;
  for (const auto& s : streams) {
    if (s.consumer == stage) r.push_back(s);
  }
  return r;
}

std::vector<StreamSpec> PipelineGraph::outgoing(std::string_view stage) const {
  std::vector<StreamSpec> r;
  for (const auto& s : streams) {
    if (s.producer == stage) r.push_back(s);
  }
  return r;
}

std::vector<std::string> validate_graph(const PipelineGraph& g) {
  std::vector<std::string> v;
  auto bad = [&v](std::string_view kind, const std::string& name, std::string_view what) {
    v.push_back(std::string(kind) + " '" + name + "': " + std::string(what));
  };

  std::set<std::string> seen;
  for (const auto& s : g.stages) {
    if (s.name.empty()) v.push_back("stage with empty name");
    if (!seen.insert(s.name).second) bad("stage", s.name, "duplicate name");
    if (s.base_ii < 1) bad("stage", s.name, "base_ii must be >= 1");
    if (s.pipeline_latency < 1) bad("stage", s.name, "pipeline_latency must be >= 1");
    if (s.items < 0) bad("stage", s.name, "items must be >= 0");
  }

  seen.clear();
  for (const auto& s : g.streams) {
    if (s.name.empty()) v.push_back("stream with empty name");
    if (!seen.insert(s.name).second) bad("stream", s.name, "duplicate name");
    if (!g.find_stage(s.producer)) bad("stream", s.name, "unknown producer '" + s.producer + "'");
    if (!g.find_stage(s.consumer)) bad("stream", s.name, "unknown consumer '" + s.consumer + "'");
    if (s.producer == s.consumer) bad("stream", s.name, "producer equals consumer");
    if (s.width_bits <= 0) bad("stream", s.name, "width_bits must be > 0");
    if (s.depth < 1) bad("stream", s.name, "depth must be >= 1");
    if (s.words_per_item < 1) bad("stream", s.name, "words_per_item must be >= 1");
  }

  const auto order = kahn(g);
  if (order.size() != g.stages.size()) {
    std::vector<bool> placed(g.stages.size(), false);
    for (std::size_t i : order) placed[i] = true;
    std::string names;
    for (const auto& s : g.streams) {
      const auto p = g.stage_index(s.producer);
      const auto c = g.stage_index(s.consumer);
      if (p && c && *p != *c && !placed[*p] && !placed[*c]) {
        names += names.empty() ? s.name : ", " + s.name;
      }
    }
    v.push_back("cycle through streams: " + names);
  }

  seen.clear();
  for (const auto& p : g.ports) {
    if (p.name.empty()) v.push_back("port with empty name");
    if (!seen.insert(p.name).second) bad("port", p.name, "duplicate name");
    if (!valid_port_width(p.width_bits)) bad("port", p.name, "width_bits must be one of 32, 64, 128, 256, 512");
    if (p.max_burst_beats < 1) bad("port", p.name, "max_burst_beats must be >= 1");
    if (p.outstanding < 1) bad("port", p.name, "outstanding must be >= 1");
    if (p.channel < 0 || p.channel >= g.memory.channel_count) bad("port", p.name, "channel out of range");
    if (!g.find_stage(p.stage)) bad("port", p.name, "unknown stage '" + p.stage + "'");
    if (p.buffers.empty()) bad("port", p.name, "needs at least one logical buffer");
    for (const auto& b : p.buffers) {
      if (b.bytes_per_item < 0 || b.bytes_per_invocation < 0 || b.footprint_bytes < 0) {
        bad("port", p.name, "buffer '" + b.name + "' has a negative size");
      }
    }
  }

  const auto& m = g.memory;
  if (m.channel_count < 1) v.push_back("memory: channel_count must be >= 1");
  if (m.chunk_bytes <= 0) v.push_back("memory: chunk_bytes must be > 0");
  if (!(m.per_channel_bytes_per_cycle > 0)) v.push_back("memory: per_channel_bytes_per_cycle must be > 0");
  if (!(m.controller_clock_hz > 0)) v.push_back("memory: controller_clock_hz must be > 0");
  if (m.access_latency_cycles < 1) v.push_back("memory: access_latency_cycles must be >= 1");
  if (m.overhead_beats < 0) v.push_back("memory: overhead_beats must be >= 0");
  if (!(g.clock.freq_hz > 0)) v.push_back("clock: freq_hz must be > 0");
  if (!(g.flops_per_item >= 0)) v.push_back("graph: flops_per_item must be >= 0");
  if (!(g.steady_cycles_per_item >= 1.0)) v.push_back("graph: steady_cycles_per_item must be >= 1");
  if (!g.stages.empty() && !g.find_stage(g.compute_stage)) {
    v.push_back("graph: compute_stage '" + g.compute_stage + "' is not a stage");
  }
  return v;
}

void require_valid(const PipelineGraph& g) {
  auto v = validate_graph(g);
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::vector<std::string> capacity_warnings(const PipelineGraph& g) {
  std::vector<std::string> w;
  for (const auto& p : g.ports) {
    for (const auto& b : p.buffers) {
      if (b.footprint_bytes > g.memory.chunk_bytes) {
        w.push_back("port '" + p.name + "': buffer '" + b.name + "' (" +
                    std::to_string(b.footprint_bytes) + " bytes) exceeds one memory chunk");
      }
    }
  }
  return w;
}

std::vector<std::size_t> topological_order(const PipelineGraph& g) {
  auto order = kahn(g);
  if (order.size() != g.stages.size()) {
    throw ValidationError({"stage graph is cyclic"});
  }
  return order;
}

PipelineGraph with_items(PipelineGraph g, std::int64_t n) {
  for (auto& s : g.stages) s.items = n;
  return g;
}

}  // namespace hflow::dataflow
