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

#include "hflow/scenarios/ladder.hpp"

#include <algorithm>
#include <cstdio>
#include <future>

#include "hflow/dataflow/analysis.hpp"
#include "hflow/scenarios/himeno_graph.hpp"
#include "hflow/sim/profile_csv.hpp"
#include "hflow/sim/simulator.hpp"

namespace hflow::scenarios {

namespace {

LadderRow run_row(const Scenario& s, const himeno::GridDims& dims, std::uint64_t iterations,
                  const LadderOptions& o) {
  KernelConfig cfg = s.config;
  apply(o.calibration, cfg);
  if (o.freq_override) cfg.freq_hz = *o.freq_override;
  const auto g = build_himeno_graph(cfg, dims, s.name);
  const auto t = dataflow::analytic_throughput(g);

  sim::SimOptions so;
  so.seed = o.seed;
  LadderRow row;
  row.scenario = s.name;
  row.label = s.label;
  row.published_mflops = s.published_mflops;
  row.bottleneck = std::string(dataflow::to_string(t.kind)) + " " + t.bottleneck;
  row.profile = sim::simulate_iterations(g, dims.interior_cells(), iterations, so);
  row.simulated_mflops = row.profile.achieved_mflops;
  row.memory_stall_fraction = row.profile.memory_stall_fraction;
  return row;
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

std::vector<LadderRow> ladder(const himeno::GridDims& dims, std::uint64_t iterations,
                              const LadderOptions& options) {
  const auto scenarios = catalog();
  std::vector<LadderRow> rows(scenarios.size());
  const unsigned threads = std::max(1u, options.threads);
  for (std::size_t base = 0; base < scenarios.size(); base += threads) {
    std::vector<std::future<LadderRow>> jobs;
    const std::size_t end = std::min(scenarios.size(), base + threads);
    for (std::size_t i = base; i < end; ++i) {
      jobs.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, run_row,
                                std::cref(scenarios[i]), std::cref(dims), iterations, std::cref(options)));
    }
    for (std::size_t i = base; i < end; ++i) rows[i] = jobs[i - base].get();
  }
  return rows;
}

std::string format_ladder(const std::vector<LadderRow>& rows) {
  const std::vector<std::string> head = {"scenario", "configuration", "sim MFLOPs", "published MFLOPs",
                                         "mem stall", "bottleneck"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.scenario, r.label, fixed(r.simulated_mflops, 2), fixed(r.published_mflops, 2),
                     fixed(r.memory_stall_fraction, 4), r.bottleneck});
  }
  std::vector<std::size_t> w(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    w[c] = head[c].size();
    for (const auto& row : cells) w[c] = std::max(w[c], row[c].size());
  }
  auto line = [&w](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t c = 0; c < v.size(); ++c) {
      const bool numeric = c >= 2 && c <= 4;
      const std::string pad(w[c] - v[c].size(), ' ');
      s += numeric ? pad + v[c] : v[c] + pad;
      if (c + 1 < v.size()) s += "  ";
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + '\n';
  };
  std::string out = line(head);
  std::vector<std::string> rule;
  for (auto x : w) rule.push_back(std::string(x, '-'));
  out += line(rule);
  for (const auto& row : cells) out += line(row);
  return out;
}

std::string ladder_csv(const std::vector<LadderRow>& rows) {
  std::string out = "scenario,label,simulated_mflops,published_mflops,memory_stall_fraction,bottleneck\n";
  for (const auto& r : rows) {
    out += r.scenario + ',' + r.label + ',' + sim::format_real(r.simulated_mflops) + ',' +
           sim::format_real(r.published_mflops) + ',' + sim::format_real(r.memory_stall_fraction) + ',' +
           r.bottleneck + '\n';
  }
  return out;
}

}  // namespace hflow::scenarios
