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

#include "hflow/dataflow/graph_json.hpp"

#include <fstream>
#include <sstream>

#include "hflow/common/error.hpp"

namespace hflow::dataflow {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

std::int64_t get_int(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) throw ParseError(where + ": '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::int64_t get_int(const json& j, const char* key, const std::string& where,
                     std::int64_t fallback) {
  return j.contains(key) ? get_int(j, key, where) : fallback;
}

double get_num(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number()) throw ParseError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

double get_num(const json& j, const char* key, const std::string& where, double fallback) {
  return j.contains(key) ? get_num(j, key, where) : fallback;
}

std::string get_str(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) throw ParseError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

const json& get_array(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_array()) throw ParseError(where + ": '" + key + "' must be an array");
  return v;
}

}  // namespace

ordered_json to_json(const MemorySystemSpec& m) {
  ordered_json j;
  j["channel_count"] = m.channel_count;
  j["chunk_bytes"] = m.chunk_bytes;
  j["per_channel_bytes_per_cycle"] = m.per_channel_bytes_per_cycle;
  j["controller_clock_hz"] = m.controller_clock_hz;
  j["access_latency_cycles"] = m.access_latency_cycles;
  j["overhead_beats"] = m.overhead_beats;
  return j;
}

ordered_json to_json(const PipelineGraph& g) {
  ordered_json j;
  j["name"] = g.name;
  j["clock"] = {{"freq_hz", g.clock.freq_hz}};
  j["memory"] = to_json(g.memory);
  j["flops_per_item"] = g.flops_per_item;
  j["compute_stage"] = g.compute_stage;
  j["steady_cycles_per_item"] = g.steady_cycles_per_item;
  j["stages"] = ordered_json::array();
  for (const auto& s : g.stages) {
    j["stages"].push_back({{"name", s.name},
                           {"base_ii", s.base_ii},
                           {"pipeline_latency", s.pipeline_latency},
                           {"items", s.items}});
  }
  j["streams"] = ordered_json::array();
  for (const auto& s : g.streams) {
    j["streams"].push_back({{"name", s.name},
                            {"producer", s.producer},
                            {"consumer", s.consumer},
                            {"width_bits", s.width_bits},
                            {"depth", s.depth},
                            {"words_per_item", s.words_per_item}});
  }
  j["ports"] = ordered_json::array();
  for (const auto& p : g.ports) {
    ordered_json buffers = ordered_json::array();
    for (const auto& b : p.buffers) {
      buffers.push_back({{"name", b.name},
                         {"bytes_per_item", b.bytes_per_item},
                         {"bytes_per_invocation", b.bytes_per_invocation},
                         {"footprint_bytes", b.footprint_bytes}});
    }
    j["ports"].push_back({{"name", p.name},
                          {"direction", std::string(to_string(p.direction))},
                          {"width_bits", p.width_bits},
                          {"max_burst_beats", p.max_burst_beats},
                          {"outstanding", p.outstanding},
                          {"channel", p.channel},
                          {"stage", p.stage},
                          {"buffers", std::move(buffers)}});
  }
  return j;
}

MemorySystemSpec memory_from_json(const json& j) {
  const std::string w = "memory";
  if (!j.is_object()) throw ParseError(w + ": expected an object");
  MemorySystemSpec d;
  MemorySystemSpec m;
  m.channel_count = get_int(j, "channel_count", w, d.channel_count);
  m.chunk_bytes = get_int(j, "chunk_bytes", w, d.chunk_bytes);
  m.per_channel_bytes_per_cycle =
      get_num(j, "per_channel_bytes_per_cycle", w, d.per_channel_bytes_per_cycle);
  m.controller_clock_hz = get_num(j, "controller_clock_hz", w, d.controller_clock_hz);
  m.access_latency_cycles = get_int(j, "access_latency_cycles", w, d.access_latency_cycles);
  m.overhead_beats = get_int(j, "overhead_beats", w, d.overhead_beats);
  return m;
}

PipelineGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("graph: expected an object");
  PipelineGraph g;
  g.name = j.contains("name") ? get_str(j, "name", "graph") : "";
  if (j.contains("clock")) g.clock.freq_hz = get_num(j["clock"], "freq_hz", "clock");
  if (j.contains("memory")) g.memory = memory_from_json(j["memory"]);
  g.flops_per_item = get_num(j, "flops_per_item", "graph", 0.0);
  g.compute_stage = get_str(j, "compute_stage", "graph");
  g.steady_cycles_per_item = get_num(j, "steady_cycles_per_item", "graph", 1.0);

  for (const auto& s : get_array(j, "stages", "graph")) {
    const std::string w = "stage";
    StageSpec st;
    st.name = get_str(s, "name", w);
    const std::string ws = w + " '" + st.name + "'";
    st.base_ii = get_int(s, "base_ii", ws, 1);
    st.pipeline_latency = get_int(s, "pipeline_latency", ws, 1);
    st.items = get_int(s, "items", ws, 0);
    g.stages.push_back(std::move(st));
  }
  if (j.contains("streams")) {
    for (const auto& s : get_array(j, "streams", "graph")) {
      StreamSpec st;
      st.name = get_str(s, "name", "stream");
      const std::string w = "stream '" + st.name + "'";
      st.producer = get_str(s, "producer", w);
      st.consumer = get_str(s, "consumer", w);
      st.width_bits = get_int(s, "width_bits", w, 32);
      st.depth = get_int(s, "depth", w, 16);
      st.words_per_item = get_int(s, "words_per_item", w, 1);
      g.streams.push_back(std::move(st));
    }
  }
  if (j.contains("ports")) {
    for (const auto& p : get_array(j, "ports", "graph")) {
      PortSpec port;
      port.name = get_str(p, "name", "port");
      const std::string w = "port '" + port.name + "'";
      const std::string dir = get_str(p, "direction", w);
      const auto d = parse_direction(dir);
      if (!d) throw ParseError(w + ": direction must be 'read' or 'write'");
      port.direction = *d;
      port.width_bits = get_int(p, "width_bits", w);
      port.max_burst_beats = get_int(p, "max_burst_beats", w, 1);
      port.outstanding = get_int(p, "outstanding", w, 1);
      port.channel = get_int(p, "channel", w, 0);
      port.stage = get_str(p, "stage", w);
      for (const auto& b : get_array(p, "buffers", w)) {
        LogicalBuffer buf;
        buf.name = get_str(b, "name", w + " buffer");
        const std::string wb = w + " buffer '" + buf.name + "'";
        buf.bytes_per_item = get_int(b, "bytes_per_item", wb, 0);
        buf.bytes_per_invocation = get_int(b, "bytes_per_invocation", wb, 0);
        buf.footprint_bytes = get_int(b, "footprint_bytes", wb, 0);
        port.buffers.push_back(std::move(buf));
      }
      g.ports.push_back(std::move(port));
    }
  }
  return g;
}

PipelineGraph parse_graph(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  return graph_from_json(j);
}

PipelineGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

void save_graph(const std::filesystem::path& path, const PipelineGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(g).dump(2) << '\n';
}

}  // namespace hflow::dataflow
