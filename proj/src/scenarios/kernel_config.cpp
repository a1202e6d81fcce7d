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

#include "hflow/scenarios/kernel_config.hpp"

#include <type_traits>

#include "hflow/common/error.hpp"
#include "hflow/dataflow/graph_json.hpp"

namespace hflow::scenarios {

namespace {
constexpr std::array<std::string_view, kFieldCount> kNames = {"a", "b", "c", "p", "wrk1", "bnd", "result", "gosa"};
constexpr std::array<int, kFieldCount> kFloats = {4, 3, 3, 1, 1, 1, 1, 1};
}  // namespace

std::string_view field_name(Field f) { return kNames[idx(f)]; }

std::optional<Field> parse_field(std::string_view name) {
  for (std::size_t i = 0; i < kFieldCount; ++i) {
    if (kNames[i] == name) return static_cast<Field>(i);
  }
  return std::nullopt;
}

int floats_per_cell(Field f) { return kFloats[idx(f)]; }

std::vector<std::string> validate_config(const KernelConfig& c) {
  std::vector<std::string> v;
  if (c.burst_beats < 1) v.push_back("config: burst_beats must be >= 1");
  if (c.outstanding < 1) v.push_back("config: outstanding must be >= 1");
  if (c.port_width_bits != 32 && c.port_width_bits != 512) v.push_back("config: port_width_bits must be 32 or 512");
  if (!(c.freq_hz > 0)) v.push_back("config: freq_hz must be > 0");
  if (c.stream_depth < 1) v.push_back("config: stream_depth must be >= 1");
  if (c.gosa_unroll < 1) v.push_back("config: gosa_unroll must be >= 1");
  if (!(c.steady_cycles_per_item >= 1.0)) v.push_back("config: steady_cycles_per_item must be >= 1");
  for (std::size_t i = 0; i < kFieldCount; ++i) {
    if (c.channel_map[i] < 0 || c.channel_map[i] >= c.memory.channel_count) {
      v.push_back("config: channel for field '" + std::string(kNames[i]) + "' out of range");
    }
  }
  return v;
}

void apply(const Calibration& cal, KernelConfig& cfg) {
  cfg.memory.access_latency_cycles = cal.access_latency_cycles;
  cfg.memory.overhead_beats = cal.overhead_beats;
  cfg.steady_cycles_per_item = cal.steady_cycles_per_item;
}

nlohmann::ordered_json to_json(const KernelConfig& c) {
  nlohmann::ordered_json j;
  j["split_ports"] = c.split_ports;
  nlohmann::ordered_json channels, packed, chunked;
  for (std::size_t i = 0; i < kFieldCount; ++i) {
    const std::string n(kNames[i]);
    channels[n] = c.channel_map[i];
    packed[n] = c.packed_fields[i];
    if (i < kInputFieldCount) chunked[n] = c.stream_chunking[i];
  }
  j["channel_map"] = channels;
  j["burst_beats"] = c.burst_beats;
  j["outstanding"] = c.outstanding;
  j["port_width_bits"] = c.port_width_bits;
  j["packed_fields"] = packed;
  j["stream_chunking"] = chunked;
  j["stream_depth"] = c.stream_depth;
  j["freq_hz"] = c.freq_hz;
  j["gosa_unroll"] = c.gosa_unroll;
  j["steady_cycles_per_item"] = c.steady_cycles_per_item;
  j["memory"] = dataflow::to_json(c.memory);
  return j;
}

KernelConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("kernel config: expected an object");
  KernelConfig c;
  try {
    if (j.contains("split_ports")) c.split_ports = j.at("split_ports").get<bool>();
    auto per_field = [&j](const char* key, auto& arr) {
      if (!j.contains(key)) return;
      for (const auto& [k, v] : j.at(key).items()) {
        const auto f = parse_field(k);
        if (!f) throw ParseError(std::string("kernel config: unknown field '") + k + "' in " + key);
        arr[idx(*f)] = v.template get<std::decay_t<decltype(arr[0])>>();
      }
    };
    per_field("channel_map", c.channel_map);
    per_field("packed_fields", c.packed_fields);
    per_field("stream_chunking", c.stream_chunking);
    if (j.contains("burst_beats")) c.burst_beats = j.at("burst_beats").get<std::int64_t>();
    if (j.contains("outstanding")) c.outstanding = j.at("outstanding").get<std::int64_t>();
    if (j.contains("port_width_bits")) c.port_width_bits = j.at("port_width_bits").get<std::int64_t>();
    if (j.contains("stream_depth")) c.stream_depth = j.at("stream_depth").get<std::int64_t>();
    if (j.contains("freq_hz")) c.freq_hz = j.at("freq_hz").get<double>();
    if (j.contains("gosa_unroll")) c.gosa_unroll = j.at("gosa_unroll").get<std::int64_t>();
    if (j.contains("steady_cycles_per_item")) c.steady_cycles_per_item = j.at("steady_cycles_per_item").get<double>();
    if (j.contains("memory")) c.memory = dataflow::memory_from_json(j.at("memory"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("kernel config: ") + e.what());
  }
  return c;
}

}  // namespace hflow::scenarios
