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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hflow/dataflow/graph.hpp"

namespace hflow::scenarios {

// Kernel fields in port order. gosa is the per-invocation residual.
enum class Field { kA, kB, kC, kP, kWrk1, kBnd, kResult, kGosa };
inline constexpr std::size_t kFieldCount = 8;
inline constexpr std::size_t kInputFieldCount = 6;  // a .. bnd

template <typename T>
using PerField = std::array<T, kFieldCount>;

std::string_view field_name(Field f);
std::optional<Field> parse_field(std::string_view name);
inline std::size_t idx(Field f) { return static_cast<std::size_t>(f); }

/// Floats per cell of each field (a: 4, b and c: 3, the rest 1).
int floats_per_cell(Field f);

/// Optimization knobs that generate the kernel's pipeline graph.
struct KernelConfig {
  bool split_ports = false;
  PerField<std::int64_t> channel_map{};     // HBM channel per field
  std::int64_t burst_beats = 1;
  std::int64_t outstanding = 1;
  std::int64_t port_width_bits = 32;
  PerField<bool> packed_fields{true, true, true, true, true, true, true, true};
  PerField<bool> stream_chunking{};         // only a .. bnd are used
  std::int64_t stream_depth = 16;
  double freq_hz = 300e6;
  std::int64_t gosa_unroll = 11;
  dataflow::MemorySystemSpec memory;
  double steady_cycles_per_item = 1.0;

  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
};

std::vector<std::string> validate_config(const KernelConfig& cfg);

/// Calibration inputs shared by every scenario; overridable from a config
/// file.
struct Calibration {
  std::int64_t access_latency_cycles = 64;
  std::int64_t overhead_beats = 1;
  double steady_cycles_per_item = 1.0;
};

void apply(const Calibration& cal, KernelConfig& cfg);

nlohmann::ordered_json to_json(const KernelConfig& cfg);
KernelConfig config_from_json(const nlohmann::json& j);

}  // namespace hflow::scenarios
