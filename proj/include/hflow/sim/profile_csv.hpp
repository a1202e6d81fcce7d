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

#include <filesystem>
#include <string>
#include <string_view>

#include "hflow/sim/profile.hpp"

namespace hflow::sim {

/// Column order of the profile CSV. Every row repeats total_cycles; unused
/// cells are empty. Rows, in order:
///   graph    name = graph name
///   stage    active_cycles, stall_empty, stall_full; value = items done
///   stream   stall_empty, stall_full, words = words pushed;
///            value = words left resident
///   port     active_cycles = bus busy cycles, bytes, bandwidth_Bps,
///            utilization; value = channel
///   summary  name = metric, value = number (freq_hz, items, iterations,
///            memory_stall_cycles, memory_stall_fraction, achieved_mflops,
///            steady_items_per_second)
/// Reals use the shortest representation that reads back to the same
/// double.
inline constexpr std::string_view kProfileCsvHeader =
    "entity_type,name,total_cycles,active_cycles,stall_empty,stall_full,words,bytes,"
    "bandwidth_Bps,utilization,value";

std::string profile_to_csv(const SimProfile& p);

/// Inverse of profile_to_csv; throws ParseError on malformed input.
SimProfile parse_profile_csv(std::string_view text);

void write_profile_csv(const std::filesystem::path& path, const SimProfile& p);
SimProfile read_profile_csv(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_real(double x);

}  // namespace hflow::sim
