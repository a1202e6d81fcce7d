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
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "hflow/common/error.hpp"
#include "hflow/dataflow/analysis.hpp"
#include "hflow/himeno/grid.hpp"
#include "hflow/scenarios/catalog.hpp"
#include "hflow/scenarios/himeno_graph.hpp"
#include "hflow/sim/profile_csv.hpp"
#include "hflow/sim/simulator.hpp"
#include "support/graphs.hpp"
#include "support/random_graphs.hpp"
#include "support/test_util.hpp"

namespace hflow::sim {
namespace {

using dataflow::PipelineGraph;
using testing::chain;
using testing::random_polytree;
using testing::rel_err;

PipelineGraph scenario_graph(const std::string& name, himeno::GridDims dims) {
  const auto* s = scenarios::find_scenario(name);
  return scenarios::build_himeno_graph(s->config, dims, s->name);
}

TEST(Simulate, SingleStageFillAndDrain) {
  auto g = chain({{1, 10}});
  const auto p = simulate(g, 1000);
  EXPECT_EQ(p.total_cycles, 1009u);
  EXPECT_EQ(p.stages[0].items, 1000u);
}

TEST(Simulate, FastProducerStallsHalfTheTime) {
  auto g = chain({{1, 3}, {2, 5}});
  const auto p = simulate(g, 100000);
  const double full = static_cast<double>(p.stage("s0")->stall_full_cycles) / static_cast<double>(p.total_cycles);
  EXPECT_NEAR(full, 0.5, 0.01);
  EXPECT_LT(rel_err(p.steady_items_per_second, 150e6), 1e-9);
}

TEST(Simulate, ZeroItemsGivesZeroProfile) {
  const auto p = simulate(scenario_graph("initial", himeno::make_dims(10, 10, 10)), 0);
  EXPECT_EQ(p.total_cycles, 0u);
  EXPECT_EQ(p.achieved_mflops, 0.0);
  EXPECT_EQ(p.memory_stall_fraction, 0.0);
  for (const auto& s : p.stages) {
    EXPECT_EQ(s.active_cycles + s.stall_empty_cycles + s.stall_full_cycles + s.items, 0u);
  }
  for (const auto& s : p.ports) EXPECT_EQ(s.bytes_moved, 0u);
}

TEST(Simulate, InvalidGraphThrows) {
  auto g = chain({{1, 1}, {1, 1}});
  g.streams[0].producer = "nobody";
  EXPECT_THROW(simulate(g, 10), ValidationError);
}

TEST(Simulate, StarvedConsumerDeadlocks) {
  auto g = chain({{1, 2}, {1, 2}});
  g.compute_stage = "s1";
  g.stages[0].items = 10;
  g.stages[1].items = 20;
  try {
    simulate(g, 20);
    FAIL() << "expected deadlock";
  } catch (const DeadlockError& e) {
    const auto& b = e.blocked();
    EXPECT_NE(std::find(b.begin(), b.end(), "stage s1"), b.end());
    EXPECT_TRUE(std::any_of(b.begin(), b.end(), [](const std::string& s) { return s.find("stream q1") == 0; }));
  }
}

TEST(Simulate, OverfullProducerDeadlocks) {
  auto g = chain({{1, 2}, {1, 2}}, 4);
  g.compute_stage = "s1";
  g.stages[0].items = 100;
  g.stages[1].items = 10;
  EXPECT_THROW(simulate(g, 10), DeadlockError);
}

TEST(Simulate, DeclaredItemRatiosAreKept) {
  auto g = chain({{1, 2}, {1, 2}});
  g.compute_stage = "s1";
  g.stages[0].items = 8;
  g.stages[1].items = 8;
  const auto p = simulate(g, 500);
  EXPECT_EQ(p.stage("s0")->items, 500u);
  EXPECT_EQ(p.stage("s1")->items, 500u);
}

TEST(Simulate, StreamWordsAreConserved) {
  for (const auto& s : scenarios::catalog()) {
    const auto p = simulate(scenario_graph(s.name, himeno::make_dims(12, 12, 20)), 1800);
    for (const auto& st : p.streams) {
      EXPECT_EQ(st.words_pushed, st.words_popped + st.resident_words) << s.name << " " << st.name;
    }
  }
}

TEST(Simulate, CountersRespectTheirBounds) {
  for (const auto& s : scenarios::catalog()) {
    const auto p = simulate(scenario_graph(s.name, himeno::make_dims(12, 12, 20)), 1800);
    for (const auto& st : p.stages) {
      EXPECT_LE(st.active_cycles + st.stall_empty_cycles + st.stall_full_cycles, p.total_cycles) << st.name;
    }
    for (const auto& st : p.streams) {
      EXPECT_GE(st.stall_rate, 0.0);
      EXPECT_LE(st.stall_rate, 1.0);
    }
    for (const auto& pt : p.ports) {
      EXPECT_GE(pt.utilization, 0.0);
      EXPECT_LE(pt.utilization, 1.0);
      EXPECT_LE(pt.busy_cycles, p.total_cycles);
    }
    EXPECT_GE(p.memory_stall_fraction, 0.0);
    EXPECT_LE(p.memory_stall_fraction, 1.0);
  }
}

TEST(Simulate, ReadPortsMoveEveryByte) {
  const auto g = scenario_graph("burst", himeno::make_dims(12, 12, 20));
  const auto p = simulate(g, 1800);
  for (const auto& port : g.ports) {
    EXPECT_EQ(p.port(port.name)->bytes_moved,
              static_cast<std::uint64_t>(port.bytes_per_item() * 1800 + port.bytes_per_invocation()))
        << port.name;
  }
}

TEST(Simulate, IsDeterministic) {
  const auto g = scenario_graph("wide512_partial", himeno::make_dims(14, 14, 22));
  for (std::uint64_t seed : {0u, 5u}) {
    EXPECT_EQ(simulate(g, 3000, seed), simulate(g, 3000, seed));
  }
}

TEST(Simulate, NoStallsTracksAnalyticThroughput) {
  const auto dims = himeno::make_dims(50, 50, 50);
  const auto g = scenario_graph("no_stalls", dims);
  ASSERT_GE(dims.interior_cells(), 100000u);
  const auto p = simulate(g, dims.interior_cells());
  const double analytic = dataflow::analytic_throughput(g).items_per_second * g.flops_per_item / 1e6;
  EXPECT_LT(rel_err(p.achieved_mflops, analytic), 0.01);
}

TEST(Simulate, ScalarStreamsRunAtQuarterRate) {
  const auto dims = himeno::make_dims(50, 50, 50);
  const auto g = scenario_graph("wide512_full", dims);
  const auto p = simulate(g, dims.interior_cells());
  EXPECT_LT(rel_err(p.steady_items_per_second, g.clock.freq_hz / 4), 0.01);
}

TEST(Simulate, FrequencyLeavesCycleCountsAlone) {
  auto g = chain({{1, 7}, {3, 12}, {2, 4}});
  const auto slow = simulate(g, 5000);
  g.clock.freq_hz *= 2.5;
  const auto fast = simulate(g, 5000);
  EXPECT_EQ(slow.total_cycles, fast.total_cycles);
  EXPECT_DOUBLE_EQ(fast.achieved_mflops, 2.5 * slow.achieved_mflops);
}

TEST(SimulateIterations, OneIterationEqualsSimulate) {
  const auto g = scenario_graph("burst", himeno::make_dims(12, 12, 20));
  EXPECT_EQ(simulate_iterations(g, 1800, 1), simulate(g, 1800));
}

TEST(SimulateIterations, ReplayMatchesLooping) {
  const auto g = scenario_graph("split_ports", himeno::make_dims(8, 8, 10));
  SimOptions loop;
  loop.replay_iterations = false;
  EXPECT_EQ(simulate_iterations(g, 384, 4), simulate_iterations(g, 384, 4, loop));
}

TEST(SimulateIterations, CountersScaleWithIterations) {
  const auto g = scenario_graph("wide512_full", himeno::make_dims(10, 10, 12));
  const auto one = simulate(g, 640);
  const auto five = simulate_iterations(g, 640, 5);
  EXPECT_EQ(five.total_cycles, 5 * one.total_cycles);
  EXPECT_EQ(five.items, 5 * one.items);
  EXPECT_EQ(five.iterations, 5u);
  EXPECT_EQ(five.port("gosa")->bytes_moved, 5 * one.port("gosa")->bytes_moved);
  EXPECT_DOUBLE_EQ(five.achieved_mflops, one.achieved_mflops);
}

TEST(SimulateIterations, StallFreeArithmetic) {
  auto g = chain({{2, 10}, {2, 6}});
  const std::uint64_t n = 4000, k = 7;
  const auto p = simulate_iterations(g, n, k);
  const double expected = static_cast<double>(k) * static_cast<double>(n * 2 + 10 + 6);
  EXPECT_LT(rel_err(static_cast<double>(p.total_cycles), expected), 0.01);
}

TEST(SimulateIterations, MiddleSizeNoStallsBarelyWaitsOnMemory) {
  const auto dims = himeno::make_dims(129, 129, 257);
  const auto p = simulate_iterations(scenario_graph("no_stalls", dims), dims.interior_cells(), 200);
  EXPECT_LT(p.memory_stall_fraction, 0.01);
  EXPECT_EQ(p.iterations, 200u);
}

TEST(Property, PolytreesMatchAnalyticThroughput) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const auto g = random_polytree(rng);
    ASSERT_TRUE(dataflow::validate_graph(g).empty());
    std::int64_t max_latency = 1;
    for (const auto& s : g.stages) max_latency = std::max(max_latency, s.pipeline_latency);
    const auto n = static_cast<std::uint64_t>(100 * max_latency);
    const auto p = simulate(g, n);
    const double analytic = dataflow::analytic_throughput(g).items_per_second;
    EXPECT_LT(rel_err(p.steady_items_per_second, analytic), 0.01)
        << "graph " << t << ": " << p.steady_items_per_second << " vs " << analytic;
  }
}

TEST(Property, MoreResourcesNeverSlowTheKernel) {
  const auto s = testing::monotonicity_survey(99, 120, 5000);
  EXPECT_GE(s.compared, 500);
  std::string listing;
  for (std::size_t i = 0; i < s.drops.size() && i < 12; ++i) listing += "\n  " + s.drops[i];
  EXPECT_TRUE(s.drops.empty()) << s.drops.size() << " of " << s.compared << " pairs slowed down:" << listing;
}

TEST(Property, DeeperStreamsNeverSlowPolytrees) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::int64_t> extra(1, 16);
  for (int t = 0; t < 200; ++t) {
    const auto g = random_polytree(rng);
    if (g.streams.empty()) continue;
    auto deeper = g;
    deeper.streams[static_cast<std::size_t>(t) % deeper.streams.size()].depth += extra(rng);
    const auto a = simulate(g, 2000), b = simulate(deeper, 2000);
    EXPECT_LE(b.total_cycles, a.total_cycles) << "graph " << t;
  }
}

TEST(ProfileCsv, RoundTripsEveryScenario) {
  for (const auto& s : scenarios::catalog()) {
    const auto p = simulate_iterations(scenario_graph(s.name, himeno::make_dims(8, 8, 10)), 384, 3);
    EXPECT_EQ(parse_profile_csv(profile_to_csv(p)), p) << s.name;
  }
}

TEST(ProfileCsv, GoldenChain) {
  auto g = chain({{1, 3}, {2, 5}}, 4);
  g.name = "golden";
  // s0 retires item k at cycle k + 2; s1 starts item k at 2 + 2k and
  // finishes the last at cycle 24. The stream holds 4 words at the end of
  // cycle 10, so item 9's word waits one cycle.
  const std::string expected =
      "entity_type,name,total_cycles,active_cycles,stall_empty,stall_full,words,bytes,bandwidth_Bps,utilization,value\n"
      "graph,golden,25,,,,,,,,\n"
      "stage,s0,25,13,0,0,,,,,10\n"
      "stage,s1,25,23,2,0,,,,,10\n"
      "stream,q1,25,,2,1,10,,,,0\n"
      "summary,freq_hz,25,,,,,,,,3e+08\n"
      "summary,items,25,,,,,,,,10\n"
      "summary,iterations,25,,,,,,,,1\n"
      "summary,memory_stall_cycles,25,,,,,,,,0\n"
      "summary,memory_stall_fraction,25,,,,,,,,0\n"
      "summary,achieved_mflops,25,,,,,,,,120\n"
      "summary,steady_items_per_second,25,,,,,,,,3e+08\n";
  EXPECT_EQ(profile_to_csv(simulate(g, 10)), expected);
}

TEST(ProfileCsv, QuotedNamesSurvive) {
  auto g = chain({{1, 2}});
  g.name = "with, comma \"and quotes\"";
  const auto p = simulate(g, 5);
  EXPECT_EQ(parse_profile_csv(profile_to_csv(p)), p);
}

TEST(ProfileCsv, MalformedInputThrows) {
  EXPECT_THROW(parse_profile_csv(""), ParseError);
  EXPECT_THROW(parse_profile_csv("entity_type,name\n"), ParseError);
  const std::string header(kProfileCsvHeader);
  EXPECT_THROW(parse_profile_csv(header + "\nwidget,x,1,,,,,,,,\n"), ParseError);
  EXPECT_THROW(parse_profile_csv(header + "\nstage,x,1,abc,0,0,,,,,1\n"), ParseError);
  EXPECT_THROW(parse_profile_csv(header + "\nstage,\"x,1,1,0,0,,,,,1\n"), ParseError);
}

TEST(FormatReal, ShortestRoundTrip) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1e300), "1e+300");
  EXPECT_EQ(format_real(300e6), "3e+08");
  EXPECT_EQ(format_real(123456789), "123456789");
  for (double x : {1.0 / 3, 2.0 / 7, 12345.6789, 5e-324}) EXPECT_EQ(std::strtod(format_real(x).c_str(), nullptr), x);
}

}  // namespace
}  // namespace hflow::sim
