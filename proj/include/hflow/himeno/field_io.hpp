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

#include "hflow/himeno/grid.hpp"

namespace hflow::himeno {

// Raw field dump, all integers little-endian:
//   char[4]  magic "HMFD"
//   u32      version (1)
//   u32      nx, ny, nz
//   u32      name length, followed by that many name bytes
//   f32      nx*ny*nz values, k fastest
inline constexpr char kFieldMagic[4] = {'H', 'M', 'F', 'D'};
inline constexpr std::uint32_t kFieldVersion = 1;

struct FieldDump {
  std::string name;
  Field field;
};

void write_field(const std::filesystem::path& path, std::string_view name, const Field& field);

/// Throws hflow::Error on a malformed or truncated file.
FieldDump read_field(const std::filesystem::path& path);

}  // namespace hflow::himeno
