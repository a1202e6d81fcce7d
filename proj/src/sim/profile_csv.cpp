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

#include "hflow/sim/profile_csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "hflow/common/error.hpp"

namespace hflow::sim {

std::string format_real(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

using Row = std::vector<std::string>;

void emit(std::string& out, const Row& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ',';
    out += quote(r[i]);
  }
  out += '\n';
}

std::vector<Row> split_rows(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string cell;
  bool in_quotes = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
      }
      row.clear();
      cell.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (in_quotes) throw ParseError("profile CSV: unterminated quote");
  if (any || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t to_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ParseError(std::string("profile CSV: bad ") + what + " '" + s + "'");
  }
  return v;
}

std::int64_t to_i64(const std::string& s, const char* what) {
  std::int64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ParseError(std::string("profile CSV: bad ") + what + " '" + s + "'");
  }
  return v;
}

double to_real(const std::string& s, const char* what) {
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ParseError(std::string("profile CSV: bad ") + what + " '" + s + "'");
  }
  return v;
}

enum Col { kType, kName, kTotal, kActive, kEmpty, kFull, kWords, kBytes, kBandwidth, kUtil, kValue, kCols };

}  // namespace

std::string profile_to_csv(const SimProfile& p) {
  std::string out(kProfileCsvHeader);
  out += '\n';
  const std::string total = std::to_string(p.total_cycles);
  auto row = [&total](std::string type, std::string name) {
    Row r(kCols);
    r[kType] = std::move(type);
    r[kName] = std::move(name);
    r[kTotal] = total;
    return r;
  };
  emit(out, row("graph", p.graph));
  for (const auto& s : p.stages) {
    Row r = row("stage", s.name);
    r[kActive] = std::to_string(s.active_cycles);
    r[kEmpty] = std::to_string(s.stall_empty_cycles);
    r[kFull] = std::to_string(s.stall_full_cycles);
    r[kValue] = std::to_string(s.items);
    emit(out, r);
  }
  for (const auto& s : p.streams) {
    Row r = row("stream", s.name);
    r[kEmpty] = std::to_string(s.empty_stall_cycles);
    r[kFull] = std::to_string(s.full_stall_cycles);
    r[kWords] = std::to_string(s.words_pushed);
    r[kValue] = std::to_string(s.resident_words);
    emit(out, r);
  }
  for (const auto& c : p.ports) {
    Row r = row("port", c.name);
    r[kActive] = std::to_string(c.busy_cycles);
    r[kBytes] = std::to_string(c.bytes_moved);
    r[kBandwidth] = format_real(c.achieved_bandwidth);
    r[kUtil] = format_real(c.utilization);
    r[kValue] = std::to_string(c.channel);
    emit(out, r);
  }
  auto summary = [&](const char* name, std::string value) {
    Row r = row("summary", name);
    r[kValue] = std::move(value);
    emit(out, r);
  };
  summary("freq_hz", format_real(p.freq_hz));
  summary("items", std::to_string(p.items));
  summary("iterations", std::to_string(p.iterations));
  summary("memory_stall_cycles", std::to_string(p.memory_stall_cycles));
  summary("memory_stall_fraction", format_real(p.memory_stall_fraction));
  summary("achieved_mflops", format_real(p.achieved_mflops));
  summary("steady_items_per_second", format_real(p.steady_items_per_second));
  return out;
}

SimProfile parse_profile_csv(std::string_view text) {
  const auto rows = split_rows(text);
  if (rows.empty()) throw ParseError("profile CSV: empty");
  {
    std::string header;
    for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
    if (header != kProfileCsvHeader) throw ParseError("profile CSV: unexpected header");
  }
  SimProfile p;
  bool have_total = false;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    const Row& r = rows[n];
    if (r.size() != kCols) {
      throw ParseError("profile CSV: row " + std::to_string(n + 1) + " has " +
                       std::to_string(r.size()) + " cells");
    }
    const std::uint64_t total = to_u64(r[kTotal], "total_cycles");
    if (have_total && total != p.total_cycles) throw ParseError("profile CSV: inconsistent total_cycles");
    p.total_cycles = total;
    have_total = true;

    const std::string& type = r[kType];
    if (type == "graph") {
      p.graph = r[kName];
    } else if (type == "stage") {
      p.stages.push_back({r[kName], to_u64(r[kActive], "active_cycles"), to_u64(r[kEmpty], "stall_empty"),
                          to_u64(r[kFull], "stall_full"), to_u64(r[kValue], "value")});
    } else if (type == "stream") {
      StreamCounters s;
      s.name = r[kName];
      s.empty_stall_cycles = to_u64(r[kEmpty], "stall_empty");
      s.full_stall_cycles = to_u64(r[kFull], "stall_full");
      s.words_pushed = to_u64(r[kWords], "words");
      s.resident_words = to_u64(r[kValue], "value");
      if (s.resident_words > s.words_pushed) throw ParseError("profile CSV: stream resident exceeds pushed");
      s.words_popped = s.words_pushed - s.resident_words;
      s.stall_rate = total == 0 ? 0.0
                                : std::min(1.0, static_cast<double>(s.full_stall_cycles + s.empty_stall_cycles) /
                                                    static_cast<double>(total));
      p.streams.push_back(s);
    } else if (type == "port") {
      PortCounters c;
      c.name = r[kName];
      c.busy_cycles = to_u64(r[kActive], "active_cycles");
      c.bytes_moved = to_u64(r[kBytes], "bytes");
      c.achieved_bandwidth = to_real(r[kBandwidth], "bandwidth_Bps");
      c.utilization = to_real(r[kUtil], "utilization");
      c.channel = to_i64(r[kValue], "value");
      p.ports.push_back(c);
    } else if (type == "summary") {
      const std::string& k = r[kName];
      const std::string& v = r[kValue];
      if (k == "freq_hz") p.freq_hz = to_real(v, "freq_hz");
      else if (k == "items") p.items = to_u64(v, "items");
      else if (k == "iterations") p.iterations = to_u64(v, "iterations");
      else if (k == "memory_stall_cycles") p.memory_stall_cycles = to_u64(v, "memory_stall_cycles");
      else if (k == "memory_stall_fraction") p.memory_stall_fraction = to_real(v, "memory_stall_fraction");
      else if (k == "achieved_mflops") p.achieved_mflops = to_real(v, "achieved_mflops");
      else if (k == "steady_items_per_second") p.steady_items_per_second = to_real(v, "steady_items_per_second");
      else throw ParseError("profile CSV: unknown summary '" + k + "'");
    } else {
      throw ParseError("profile CSV: unknown entity type '" + type + "'");
    }
  }
  return p;
}

void write_profile_csv(const std::filesystem::path& path, const SimProfile& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << profile_to_csv(p);
}

SimProfile read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile_csv(ss.str());
}

}  // namespace hflow::sim
