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
#include <vector>

namespace hflow::sim {

struct StageCounters {
  std::string name;
  std::uint64_t active_cycles = 0;
  std::uint64_t stall_empty_cycles = 0;
  std::uint64_t stall_full_cycles = 0;
  std::uint64_t items = 0;  // items completed

  friend bool operator==(const StageCounters&, const StageCounters&) = default;
};

struct StreamCounters {
  std::string name;
  std::uint64_t words_pushed = 0;
  std::uint64_t words_popped = 0;
  std::uint64_t resident_words = 0;  // left in the FIFO at the end
  std::uint64_t full_stall_cycles = 0;
  std::uint64_t empty_stall_cycles = 0;
  double stall_rate = 0.0;  // (full + empty) / total, capped at 1

  friend bool operator==(const StreamCounters&, const StreamCounters&) = default;
};

struct PortCounters {
  std::string name;
  std::int64_t channel = 0;
  std::uint64_t busy_cycles = 0;  // bus cycles spent on overhead or beats
  std::uint64_t bytes_moved = 0;
  double achieved_bandwidth = 0.0;  // bytes per second
  double utilization = 0.0;         // of the channel's peak

  friend bool operator==(const PortCounters&, const PortCounters&) = default;
};

/// Profiler-style summary of one simulated run.
struct SimProfile {
  std::string graph;
  double freq_hz = 0.0;
  std::uint64_t items = 0;  // compute-stage items over all iterations
  std::uint64_t iterations = 0;
  std::uint64_t total_cycles = 0;
  std::vector<StageCounters> stages;
  std::vector<StreamCounters> streams;
  std::vector<PortCounters> ports;
  std::uint64_t memory_stall_cycles = 0;
  double memory_stall_fraction = 0.0;
  double achieved_mflops = 0.0;
  double steady_items_per_second = 0.0;

  const StageCounters* stage(const std::string& name) const;
  const StreamCounters* stream(const std::string& name) const;
  const PortCounters* port(const std::string& name) const;

  friend bool operator==(const SimProfile&, const SimProfile&) = default;
};

}  // namespace hflow::sim
