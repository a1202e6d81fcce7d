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
#include "hflow/himeno/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "hflow/common/error.hpp"

namespace hflow::himeno {
namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

std::uint32_t get_u32(const unsigned char* in) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(in[b]) << (8 * b);
  return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, std::string_view name, const Field& field) {
  std::vector<unsigned char> bytes(std::begin(kFieldMagic), std::end(kFieldMagic));
  put_u32(bytes, kFieldVersion);
  put_u32(bytes, static_cast<std::uint32_t>(field.dims().nx));
  put_u32(bytes, static_cast<std::uint32_t>(field.dims().ny));
  put_u32(bytes, static_cast<std::uint32_t>(field.dims().nz));
  put_u32(bytes, static_cast<std::uint32_t>(name.size()));
  bytes.insert(bytes.end(), name.begin(), name.end());
  for (float v : field.values()) put_u32(bytes, std::bit_cast<std::uint32_t>(v));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("short write to " + path.string());
}

FieldDump read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  auto fail = [&](const std::string& why) {
    return Error(path.string() + ": " + why);
  };
  if (bytes.size() < 24 || std::memcmp(bytes.data(), kFieldMagic, 4) != 0) {
    throw fail("not a field dump");
  }
  if (get_u32(&bytes[4]) != kFieldVersion) throw fail("unsupported version");
  const std::size_t nx = get_u32(&bytes[8]);
  const std::size_t ny = get_u32(&bytes[12]);
  const std::size_t nz = get_u32(&bytes[16]);
  const std::size_t name_len = get_u32(&bytes[20]);
  const std::size_t header = 24 + name_len;
  const GridDims dims = make_dims(nx, ny, nz);
  if (bytes.size() != header + 4 * dims.cells()) throw fail("size does not match header");

  FieldDump dump;
  dump.name.assign(reinterpret_cast<const char*>(&bytes[24]), name_len);
  dump.field = Field(dims);
  auto values = dump.field.values();
  for (std::size_t n = 0; n < values.size(); ++n) {
    values[n] = std::bit_cast<float>(get_u32(&bytes[header + 4 * n]));
  }
  return dump;
}

}  // namespace hflow::himeno
