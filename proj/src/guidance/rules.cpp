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

#include "hflow/guidance/rules.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

#include "hflow/common/error.hpp"
#include "hflow/dataflow/analysis.hpp"
#include "hflow/sim/profile_csv.hpp"

namespace hflow::guidance {

using dataflow::PipelineGraph;
using sim::SimProfile;

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::kHealthy: return "HEALTHY";
    case Severity::kAdvice: return "ADVICE";
    case Severity::kWarning: return "WARNING";
    case Severity::kCritical: return "CRITICAL";
  }
  return "?";
}

std::optional<Severity> parse_severity(std::string_view s) {
  for (auto v : {Severity::kHealthy, Severity::kAdvice, Severity::kWarning, Severity::kCritical}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

const std::vector<RuleInfo>& registered_rules() {
  static const std::vector<RuleInfo> rules = {
      {"R1", "shared-port"},   {"R2", "single-channel"}, {"R3", "small-burst"},
      {"R4", "narrow-port"},   {"R5", "low-utilization"}, {"R6", "stream-stall"},
      {"R7", "ii-inflation"},  {"R8", "memory-stall"},
  };
  return rules;
}

Thresholds thresholds_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("thresholds: expected an object");
  Thresholds t;
  const std::vector<std::pair<const char*, double*>> keys = {
      {"small_burst_advice_bytes", &t.small_burst_advice_bytes},
      {"small_burst_warning_bytes", &t.small_burst_warning_bytes},
      {"narrow_port_bits", &t.narrow_port_bits},
      {"low_utilization_advice", &t.low_utilization_advice},
      {"low_utilization_critical", &t.low_utilization_critical},
      {"stream_stall_rate", &t.stream_stall_rate},
      {"memory_stall_critical", &t.memory_stall_critical},
  };
  for (const auto& [k, v] : j.items()) {
    auto it = std::find_if(keys.begin(), keys.end(), [&k](const auto& e) { return k == e.first; });
    if (it == keys.end()) throw ParseError("thresholds: unknown key '" + k + "'");
    if (!v.is_number()) throw ParseError("thresholds: '" + k + "' must be a number");
    *it->second = v.get<double>();
  }
  return t;
}

nlohmann::ordered_json to_json(const Thresholds& t) {
  return {{"small_burst_advice_bytes", t.small_burst_advice_bytes},
          {"small_burst_warning_bytes", t.small_burst_warning_bytes},
          {"narrow_port_bits", t.narrow_port_bits},
          {"low_utilization_advice", t.low_utilization_advice},
          {"low_utilization_critical", t.low_utilization_critical},
          {"stream_stall_rate", t.stream_stall_rate},
          {"memory_stall_critical", t.memory_stall_critical}};
}

namespace {

void check_matches(const PipelineGraph& g, const SimProfile& p) {
  auto fail = [](const std::string& what) {
    throw InvalidArgument("profile does not match graph: " + what);
  };
  if (p.stages.size() != g.stages.size()) fail("stage count");
  if (p.streams.size() != g.streams.size()) fail("stream count");
  if (p.ports.size() != g.ports.size()) fail("port count");
  for (std::size_t i = 0; i < g.stages.size(); ++i) {
    if (p.stages[i].name != g.stages[i].name) fail("stage '" + g.stages[i].name + "'");
  }
  for (std::size_t i = 0; i < g.streams.size(); ++i) {
    if (p.streams[i].name != g.streams[i].name) fail("stream '" + g.streams[i].name + "'");
  }
  for (std::size_t i = 0; i < g.ports.size(); ++i) {
    if (p.ports[i].name != g.ports[i].name) fail("port '" + g.ports[i].name + "'");
  }
}

std::string pct(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * x);
  return buf;
}

}  // namespace

std::vector<Finding> run_rules(const PipelineGraph& g, const SimProfile& p, const Thresholds& t) {
  dataflow::require_valid(g);
  check_matches(g, p);
  std::vector<Finding> f;
  auto add = [&f](const char* id, Severity s, std::string kind, std::string entity, std::string msg,
                  std::optional<double> metric) {
    f.push_back({id, s, std::move(kind), std::move(entity), std::move(msg), metric});
  };

  std::size_t buffers = 0;
  std::set<std::int64_t> channels;
  for (std::size_t i = 0; i < g.ports.size(); ++i) {
    const auto& port = g.ports[i];
    const auto nb = port.buffers.size();
    buffers += nb;
    channels.insert(port.channel);
    if (nb > 1) {
      add("R1", Severity::kWarning, "port", port.name,
          std::to_string(nb) + " buffers share one port and are accessed one at a time",
          static_cast<double>(nb));
    }
    const auto burst = static_cast<double>(dataflow::burst_bytes(port));
    if (burst < t.small_burst_warning_bytes) {
      add("R3", Severity::kWarning, "port", port.name,
          "burst of " + std::to_string(dataflow::burst_bytes(port)) + " bytes", burst);
    } else if (burst < t.small_burst_advice_bytes) {
      add("R3", Severity::kAdvice, "port", port.name,
          "burst of " + std::to_string(dataflow::burst_bytes(port)) + " bytes", burst);
    }
    if (static_cast<double>(port.width_bits) < t.narrow_port_bits) {
      add("R4", Severity::kAdvice, "port", port.name,
          std::to_string(port.width_bits) + "-bit port; wider ports move more per beat",
          static_cast<double>(port.width_bits));
    }
    if (port.bytes_per_item() > 0) {
      const double u = p.ports[i].utilization;
      if (u < t.low_utilization_critical) {
        add("R5", Severity::kCritical, "port", port.name, "uses " + pct(u) + " of channel bandwidth", u);
      } else if (u < t.low_utilization_advice) {
        add("R5", Severity::kAdvice, "port", port.name, "uses " + pct(u) + " of channel bandwidth", u);
      }
    }
  }
  if (!g.ports.empty() && channels.size() == 1 && buffers >= 2 && g.memory.channel_count > 1) {
    add("R2", Severity::kWarning, "channel", std::to_string(*channels.begin()),
        "all " + std::to_string(buffers) + " buffers use this channel; " +
            std::to_string(g.memory.channel_count - 1) + " other channels are idle",
        static_cast<double>(buffers));
  }

  for (std::size_t i = 0; i < g.streams.size(); ++i) {
    const double r = p.streams[i].stall_rate;
    if (r >= t.stream_stall_rate) {
      add("R6", Severity::kWarning, "stream", g.streams[i].name, "stalled " + pct(r) + " of the run", r);
    }
  }

  for (const auto& s : g.stages) {
    for (const auto& in : g.incoming(s.name)) {
      if (in.words_per_item > s.base_ii) {
        add("R7", Severity::kWarning, "stream", in.name,
            "needs " + std::to_string(in.words_per_item) + " words per item, raising the II of stage " +
                s.name + " from " + std::to_string(s.base_ii) + " to " +
                std::to_string(dataflow::effective_ii(g, s)),
            static_cast<double>(in.words_per_item));
      }
    }
  }

  if (p.memory_stall_fraction > t.memory_stall_critical) {
    add("R8", Severity::kCritical, "stage", g.compute_stage,
        "blocked on external memory for " + pct(p.memory_stall_fraction) + " of the run",
        p.memory_stall_fraction);
  }

  std::sort(f.begin(), f.end(), [](const Finding& a, const Finding& b) {
    return std::tie(b.severity, a.entity_kind, a.entity, a.rule_id) <
           std::tie(a.severity, b.entity_kind, b.entity, b.rule_id);
  });
  return f;
}

std::string format_text(const std::vector<Finding>& findings) {
  std::string out;
  for (const auto& x : findings) {
    out += std::string(to_string(x.severity)) + ' ' + x.rule_id + ' ' + x.entity_kind + ' ' + x.entity +
           ": " + x.message;
    if (x.metric) out += " [" + sim::format_real(*x.metric) + "]";
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json to_json(const std::vector<Finding>& findings) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& x : findings) {
    nlohmann::ordered_json e;
    e["rule_id"] = x.rule_id;
    e["severity"] = std::string(to_string(x.severity));
    e["entity_kind"] = x.entity_kind;
    e["entity"] = x.entity;
    e["message"] = x.message;
    e["metric"] = x.metric ? nlohmann::ordered_json(*x.metric) : nlohmann::ordered_json(nullptr);
    j.push_back(std::move(e));
  }
  return j;
}

std::vector<Finding> findings_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("findings: expected an array");
  std::vector<Finding> out;
  try {
    for (const auto& e : j) {
      Finding x;
      x.rule_id = e.at("rule_id").get<std::string>();
      const auto s = parse_severity(e.at("severity").get<std::string>());
      if (!s) throw ParseError("findings: bad severity");
      x.severity = *s;
      x.entity_kind = e.at("entity_kind").get<std::string>();
      x.entity = e.at("entity").get<std::string>();
      x.message = e.at("message").get<std::string>();
      if (!e.at("metric").is_null()) x.metric = e.at("metric").get<double>();
      out.push_back(std::move(x));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("findings: ") + ex.what());
  }
  return out;
}

bool any_at_least(const std::vector<Finding>& findings, Severity s) {
  return std::any_of(findings.begin(), findings.end(), [s](const Finding& x) { return x.severity >= s; });
}

}  // namespace hflow::guidance
