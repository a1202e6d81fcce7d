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
#include <string>
#include <utility>
#include <vector>

#include "hflow/dataflow/graph.hpp"

namespace hflow::testing {

// Linear chain s0 -> s1 -> ... with one 32-bit stream per hop.
inline dataflow::PipelineGraph chain(std::vector<std::pair<std::int64_t, std::int64_t>> ii_latency,
                                     std::int64_t depth = 16) {
  dataflow::PipelineGraph g;
  g.name = "chain";
  for (std::size_t i = 0; i < ii_latency.size(); ++i) {
    g.stages.push_back({"s" + std::to_string(i), ii_latency[i].first, ii_latency[i].second, 0});
    if (i > 0) {
      g.streams.push_back({"q" + std::to_string(i), "s" + std::to_string(i - 1), "s" + std::to_string(i), 32,
                           depth, 1});
    }
  }
  g.compute_stage = "s0";
  g.flops_per_item = 1.0;
  return g;
}

// One read port feeding stage "k", which writes through a second port.
inline dataflow::PipelineGraph memory_pair(std::int64_t width_bits, std::int64_t beats, std::int64_t outstanding,
                                           std::int64_t read_channel, std::int64_t write_channel) {
  dataflow::PipelineGraph g;
  g.name = "memory_pair";
  g.stages.push_back({"k", 1, 4, 0});
  g.compute_stage = "k";
  g.flops_per_item = 2.0;
  dataflow::PortSpec in{"in", dataflow::Direction::kRead, width_bits, beats, outstanding, read_channel, "k",
                        {{"x", 4, 0, 4096}, {"y", 4, 0, 4096}}};
  dataflow::PortSpec out{"out", dataflow::Direction::kWrite, width_bits, beats, outstanding, write_channel, "k",
                         {{"z", 4, 0, 4096}}};
  g.ports = {in, out};
  return g;
}

}  // namespace hflow::testing
