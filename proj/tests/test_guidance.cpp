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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "hflow/common/error.hpp"
#include "hflow/guidance/rules.hpp"
#include "hflow/himeno/grid.hpp"
#include "hflow/scenarios/catalog.hpp"
#include "hflow/scenarios/himeno_graph.hpp"
#include "hflow/sim/simulator.hpp"
#include "support/graphs.hpp"

namespace hflow::guidance {
namespace {

using scenarios::Field;
using scenarios::KernelConfig;
using RuleSet = std::set<std::pair<std::string, Severity>>;

const himeno::GridDims kDims = himeno::make_dims(18, 18, 34);

struct Run {
  dataflow::PipelineGraph graph;
  sim::SimProfile profile;
  std::vector<Finding> findings;
};

Run run(const KernelConfig& cfg, const std::string& name = "himeno", const Thresholds& t = {}) {
  Run r;
  r.graph = scenarios::build_himeno_graph(cfg, kDims, name);
  r.profile = sim::simulate(r.graph, kDims.interior_cells());
  r.findings = run_rules(r.graph, r.profile, t);
  return r;
}

Run run(const std::string& scenario) { return run(scenarios::find_scenario(scenario)->config, scenario); }

RuleSet rules(const std::vector<Finding>& f) {
  RuleSet s;
  for (const auto& x : f) s.emplace(x.rule_id, x.severity);
  return s;
}

std::set<std::string> entities(const std::vector<Finding>& f, const std::string& rule) {
  std::set<std::string> s;
  for (const auto& x : f) {
    if (x.rule_id == rule) s.insert(x.entity);
  }
  return s;
}

bool has(const std::vector<Finding>& f, const std::string& rule, const std::string& entity) {
  return std::any_of(f.begin(), f.end(), [&](const Finding& x) { return x.rule_id == rule && x.entity == entity; });
}

constexpr auto A = Severity::kAdvice;
constexpr auto W = Severity::kWarning;
constexpr auto C = Severity::kCritical;

TEST(Scenarios, RuleTableMatchesEachRung) {
  const std::map<std::string, RuleSet> expected{
      {"initial", {{"R1", W}, {"R2", W}, {"R3", W}, {"R4", A}, {"R5", C}, {"R6", W}, {"R7", W}, {"R8", C}}},
      {"split_ports", {{"R3", W}, {"R4", A}, {"R5", C}, {"R6", W}, {"R7", W}, {"R8", C}}},
      {"burst", {{"R3", A}, {"R4", A}, {"R5", A}, {"R5", C}, {"R6", W}, {"R7", W}}},
      {"wide512_partial", {{"R3", W}, {"R4", A}, {"R5", A}, {"R6", W}, {"R7", W}}},
      {"wide512_full", {{"R5", A}, {"R6", W}, {"R7", W}}},
      {"no_stalls", {{"R5", A}}},
      {"freq450", {{"R5", A}}},
  };
  for (const auto& s : scenarios::catalog()) {
    EXPECT_EQ(rules(run(s.name).findings), expected.at(s.name)) << s.name;
  }
}

TEST(Scenarios, InitialShowsTheSharedPortDiagnosis) {
  const auto f = run("initial").findings;
  for (const char* r : {"R1", "R2", "R5", "R8"}) EXPECT_FALSE(entities(f, r).empty()) << r;
  EXPECT_EQ(entities(f, "R1"), (std::set<std::string>{"gmem_in"}));
  EXPECT_EQ(entities(f, "R2"), (std::set<std::string>{"0"}));
  EXPECT_EQ(entities(f, "R8"), (std::set<std::string>{"jacobi"}));
}

TEST(Scenarios, PartialWidthFlagsExactlyTheUnpackedFields) {
  const auto f = run("wide512_partial").findings;
  EXPECT_EQ(entities(f, "R3"), (std::set<std::string>{"a", "b", "c"}));
  for (const auto& x : f) {
    if (x.rule_id == "R3") {
      EXPECT_EQ(x.severity, W);
    }
  }
}

TEST(Scenarios, NoStallsIsQuiet) {
  const auto f = run("no_stalls").findings;
  EXPECT_FALSE(any_at_least(f, W)) << format_text(f);
}

TEST(Fixes, SplittingTheSharedPortClearsR1) {
  KernelConfig cfg = scenarios::find_scenario("initial")->config;
  ASSERT_TRUE(has(run(cfg).findings, "R1", "gmem_in"));
  cfg.split_ports = true;
  EXPECT_TRUE(entities(run(cfg).findings, "R1").empty());
}

TEST(Fixes, SpreadingChannelsClearsR2) {
  KernelConfig cfg = scenarios::find_scenario("initial")->config;
  cfg.split_ports = true;
  ASSERT_FALSE(entities(run(cfg).findings, "R2").empty());
  for (std::size_t i = 0; i < scenarios::kFieldCount; ++i) cfg.channel_map[i] = static_cast<std::int64_t>(i);
  EXPECT_TRUE(entities(run(cfg).findings, "R2").empty());
}

TEST(Fixes, PackingAFieldClearsItsR3) {
  KernelConfig cfg = scenarios::find_scenario("wide512_partial")->config;
  cfg.packed_fields[scenarios::idx(Field::kB)] = true;
  EXPECT_EQ(entities(run(cfg).findings, "R3"), (std::set<std::string>{"a", "c"}));
}

TEST(Fixes, ChunkingAStreamClearsItsR7) {
  KernelConfig cfg = scenarios::find_scenario("wide512_full")->config;
  ASSERT_TRUE(has(run(cfg).findings, "R7", "a"));
  cfg.stream_chunking[scenarios::idx(Field::kA)] = true;
  const auto f = run(cfg).findings;
  EXPECT_FALSE(has(f, "R7", "a"));
  EXPECT_FALSE(has(f, "R7", "raw_a"));
  EXPECT_TRUE(has(f, "R7", "b"));
}

TEST(Fixes, WideBurstsClearR8) {
  EXPECT_FALSE(entities(run("split_ports").findings, "R8").empty());
  EXPECT_TRUE(entities(run("wide512_full").findings, "R8").empty());
}

TEST(Thresholds, BurstAndWidthExamples) {
  auto g = testing::memory_pair(32, 1, 1, 0, 1);
  auto p = sim::simulate(g, 200);
  auto f = run_rules(g, p);
  EXPECT_TRUE(has(f, "R3", "in"));
  EXPECT_TRUE(has(f, "R4", "in"));
  for (const auto& x : f) {
    if (x.rule_id == "R3") {
      EXPECT_EQ(x.severity, W);
    }
  }
  g = testing::memory_pair(512, 16, 1, 0, 1);
  p = sim::simulate(g, 200);
  f = run_rules(g, p);
  EXPECT_FALSE(has(f, "R3", "in"));
  EXPECT_FALSE(has(f, "R4", "in"));
}

TEST(Thresholds, AdviceBandForMidSizedBursts) {
  const auto g = testing::memory_pair(512, 4, 1, 0, 1);
  const auto f = run_rules(g, sim::simulate(g, 200));
  ASSERT_TRUE(has(f, "R3", "in"));
  for (const auto& x : f) {
    if (x.rule_id == "R3") {
      EXPECT_EQ(x.severity, A);
    }
  }
}

TEST(Thresholds, ConfigurableFromJson) {
  const auto t = thresholds_from_json(nlohmann::json::parse(R"({"stream_stall_rate": 0.9})"));
  EXPECT_EQ(t.stream_stall_rate, 0.9);
  EXPECT_EQ(t.small_burst_advice_bytes, Thresholds{}.small_burst_advice_bytes);
  const auto cfg = scenarios::find_scenario("wide512_full")->config;
  EXPECT_FALSE(entities(run(cfg).findings, "R6").empty());
  EXPECT_TRUE(entities(run(cfg, "himeno", t).findings, "R6").empty());
  EXPECT_THROW(thresholds_from_json(nlohmann::json::parse(R"({"stall": 0.9})")), ParseError);
  EXPECT_THROW(thresholds_from_json(nlohmann::json::parse(R"({"stream_stall_rate": "high"})")), ParseError);
  EXPECT_EQ(thresholds_from_json(to_json(t)).stream_stall_rate, 0.9);
}

TEST(Findings, SortedBySeverityThenEntity) {
  for (const auto& s : scenarios::catalog()) {
    const auto f = run(s.name).findings;
    for (std::size_t i = 1; i < f.size(); ++i) {
      const auto key = [](const Finding& x) {
        return std::make_tuple(-static_cast<int>(x.severity), x.entity_kind, x.entity, x.rule_id);
      };
      EXPECT_LE(key(f[i - 1]), key(f[i])) << s.name << " at " << i;
    }
  }
}

TEST(Findings, RuleIdsAreRegistered) {
  std::set<std::string> ids;
  for (const auto& r : registered_rules()) ids.insert(std::string(r.id));
  EXPECT_EQ(ids.size(), 8u);
  for (const auto& s : scenarios::catalog()) {
    for (const auto& x : run(s.name).findings) EXPECT_TRUE(ids.count(x.rule_id)) << x.rule_id;
  }
}

TEST(Findings, StableAcrossReruns) {
  const auto a = run("burst");
  const auto again = run_rules(a.graph, sim::simulate(a.graph, kDims.interior_cells()));
  EXPECT_EQ(a.findings, again);
}

TEST(Findings, MismatchedProfileIsRejected) {
  const auto a = run("initial");
  const auto b = run("no_stalls");
  EXPECT_THROW(run_rules(a.graph, b.profile), InvalidArgument);
}

TEST(Findings, TextFormat) {
  const auto f = run("wide512_partial").findings;
  const auto text = format_text(f);
  EXPECT_NE(text.find("WARNING R3 port a: burst of 4 bytes [4]\n"), std::string::npos) << text;
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), f.size());
}

TEST(Findings, JsonRoundTrip) {
  for (const auto& s : scenarios::catalog()) {
    const auto f = run(s.name).findings;
    EXPECT_EQ(findings_from_json(nlohmann::json::parse(to_json(f).dump())), f) << s.name;
  }
  EXPECT_THROW(findings_from_json(nlohmann::json::parse(R"([{"rule_id":"R1"}])")), ParseError);
}

TEST(Severity, ParsesWhatItPrints) {
  for (auto s : {Severity::kHealthy, A, W, C}) EXPECT_EQ(parse_severity(to_string(s)), s);
  EXPECT_FALSE(parse_severity("fatal").has_value());
  EXPECT_LT(A, W);
  EXPECT_LT(W, C);
}

}  // namespace
}  // namespace hflow::guidance
