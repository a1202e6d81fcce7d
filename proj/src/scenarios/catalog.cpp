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

#include "hflow/scenarios/catalog.hpp"

#include <vector>

namespace hflow::scenarios {

namespace {

std::vector<Scenario> build() {
  std::vector<Scenario> v;
  KernelConfig c;  // one shared port on channel 0, 32-bit single beats
  v.push_back({"initial", "Initial FPGA version", c, 77.82, 330e6});

  c.split_ports = true;
  for (std::size_t i = 0; i < kFieldCount; ++i) c.channel_map[i] = static_cast<std::int64_t>(i);
  v.push_back({"split_ports", "Split out ports", c, 220.23, 330e6});

  c.burst_beats = 16;
  c.outstanding = 2;
  v.push_back({"burst", "Memory burst transfers", c, 301.58, 330e6});

  c.port_width_bits = 512;
  c.outstanding = 32;
  for (Field f : {Field::kA, Field::kB, Field::kC}) c.packed_fields[idx(f)] = false;
  v.push_back({"wide512_partial", "Initial 512 bit width", c, 357.21, 330e6});

  for (Field f : {Field::kA, Field::kB, Field::kC}) c.packed_fields[idx(f)] = true;
  v.push_back({"wide512_full", "Bug-fixed 512 bit width", c, 1452.13, 330e6});

  for (std::size_t i = 0; i < kInputFieldCount; ++i) c.stream_chunking[i] = true;
  v.push_back({"no_stalls", "Removed pipeline stalls", c, 5773.25, 330e6});

  c.freq_hz = 450e6;
  c.gosa_unroll = 20;
  v.push_back({"freq450", "Increase frequency to 450Mhz", c, 8658.42, 501e6});
  return v;
}

}  // namespace

std::span<const Scenario> catalog() {
  static const std::vector<Scenario> scenarios = build();
  return scenarios;
}

const Scenario* find_scenario(std::string_view name) {
  for (const auto& s : catalog()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

nlohmann::ordered_json catalog_json() {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& s : catalog()) {
    j.push_back({{"name", s.name},
                 {"label", s.label},
                 {"published_mflops", s.published_mflops},
                 {"estimated_fmax_hz", s.estimated_fmax_hz},
                 {"config", to_json(s.config)}});
  }
  return j;
}

}  // namespace hflow::scenarios
