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

#include "hflow/scenarios/himeno_graph.hpp"

#include <bit>

#include "hflow/common/error.hpp"
#include "hflow/himeno/stencil.hpp"

namespace hflow::scenarios {

using dataflow::Direction;
using dataflow::LogicalBuffer;
using dataflow::PortSpec;
using dataflow::StageSpec;
using dataflow::StreamSpec;

namespace {

constexpr int kStencilFloats = 21;  // 19 p values, wrk1, bnd

std::int64_t ceil_log2(std::int64_t x) {
  return x <= 1 ? 0 : std::bit_width(static_cast<std::uint64_t>(x - 1));
}

}  // namespace

dataflow::PipelineGraph build_himeno_graph(const KernelConfig& cfg, const himeno::GridDims& dims,
                                           std::string name) {
  if (auto v = validate_config(cfg); !v.empty()) throw ValidationError(std::move(v));
  const auto items = static_cast<std::int64_t>(dims.interior_cells());
  const auto cells = static_cast<std::int64_t>(dims.cells());

  dataflow::PipelineGraph g;
  g.name = std::move(name);
  g.memory = cfg.memory;
  g.clock.freq_hz = cfg.freq_hz;
  g.flops_per_item = himeno::kFlopsPerCell;
  g.compute_stage = "jacobi";
  g.steady_cycles_per_item = cfg.steady_cycles_per_item;

  const std::int64_t u = cfg.gosa_unroll;
  g.stages = {
      {"read", 1, 2, items},
      {"package", 1, 3, items},
      {"jacobi", 1, kJacobiLatency, items},
      {"write", 1, 2, items},
      {"gosa", (kFaddLatency + u - 1) / u, kFaddLatency * (1 + ceil_log2(u)), items},
  };

  auto field_stream = [&cfg](Field f, std::string sname, std::string from, std::string to) {
    const int n = floats_per_cell(f);
    const bool chunk = cfg.stream_chunking[idx(f)];
    return StreamSpec{std::move(sname), std::move(from), std::move(to),
                      chunk ? 32 * n : 32, cfg.stream_depth, chunk ? 1 : n};
  };
  for (std::size_t i = 0; i < kInputFieldCount; ++i) {
    const auto f = static_cast<Field>(i);
    g.streams.push_back(field_stream(f, "raw_" + std::string(field_name(f)), "read", "package"));
  }
  for (Field f : {Field::kA, Field::kB, Field::kC}) {
    g.streams.push_back(field_stream(f, std::string(field_name(f)), "package", "jacobi"));
  }
  g.streams.push_back({"stencil", "package", "jacobi", 32 * kStencilFloats, cfg.stream_depth, 1});
  g.streams.push_back({"result", "jacobi", "write", 32, cfg.stream_depth, 1});
  g.streams.push_back({"ss", "jacobi", "gosa", 32, cfg.stream_depth, 1});

  auto buffer = [cells](Field f) {
    const std::int64_t bytes = 4 * floats_per_cell(f);
    if (f == Field::kGosa) return LogicalBuffer{"gosa", 0, 4, 4};
    return LogicalBuffer{std::string(field_name(f)), bytes, 0, bytes * cells};
  };
  auto port = [&cfg](std::string pname, Direction dir, Field f, std::string stage) {
    const bool narrow = cfg.port_width_bits == 512 && !cfg.packed_fields[idx(f)];
    return PortSpec{std::move(pname), dir,  narrow ? 32 : cfg.port_width_bits,
                    narrow ? 1 : cfg.burst_beats, cfg.outstanding, cfg.channel_map[idx(f)],
                    std::move(stage), {}};
  };

  if (cfg.split_ports) {
    for (std::size_t i = 0; i < kInputFieldCount; ++i) {
      const auto f = static_cast<Field>(i);
      PortSpec p = port(std::string(field_name(f)), Direction::kRead, f, "read");
      p.buffers.push_back(buffer(f));
      g.ports.push_back(std::move(p));
    }
    PortSpec r = port("result", Direction::kWrite, Field::kResult, "write");
    r.buffers.push_back(buffer(Field::kResult));
    g.ports.push_back(std::move(r));
    PortSpec s = port("gosa", Direction::kWrite, Field::kGosa, "gosa");
    s.buffers.push_back(buffer(Field::kGosa));
    g.ports.push_back(std::move(s));
  } else {
    PortSpec in = port("gmem_in", Direction::kRead, Field::kA, "read");
    for (std::size_t i = 0; i < kInputFieldCount; ++i) in.buffers.push_back(buffer(static_cast<Field>(i)));
    g.ports.push_back(std::move(in));
    PortSpec out = port("gmem_out", Direction::kWrite, Field::kResult, "write");
    out.buffers.push_back(buffer(Field::kResult));
    g.ports.push_back(std::move(out));
    PortSpec s = port("gosa_out", Direction::kWrite, Field::kGosa, "gosa");
    s.buffers.push_back(buffer(Field::kGosa));
    g.ports.push_back(std::move(s));
  }
  return g;
}

}  // namespace hflow::scenarios
