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

#include <cstdint>

#include "hflow/dataflow/graph.hpp"
#include "hflow/sim/profile.hpp"

namespace hflow::sim {

struct SimOptions {
  std::uint64_t seed = 0;  // initial round-robin positions
  // Iterations restart from an empty pipeline, so later ones repeat the
  // first exactly; replay scales the first instead of re-running it.
  bool replay_iterations = true;
};

/// Cycle-stepped run of one kernel invocation in which the compute stage
/// processes n_items. A stage whose declared items differ from the compute
/// stage's processes n_items scaled by the same ratio; otherwise every stage
/// processes n_items. Each cycle, memory ports act first (burst issue, then bus
/// beats under channel arbitration), then stages in topological order:
/// drain output words, retire the due item (a blocked retire freezes the
/// whole stage), pop at most one word per input stream, and start an item
/// once its inputs are complete and its II window has passed. Words pushed
/// in a cycle are visible to later stages in the same cycle.
///
/// Throws ValidationError for an invalid graph and DeadlockError when no
/// stage can progress and no memory event is pending.
SimProfile simulate(const dataflow::PipelineGraph& g, std::uint64_t n_items,
                    std::uint64_t seed = 0);

/// Back-to-back invocations, each draining the pipeline and writing its
/// per-invocation results; counters are summed.
SimProfile simulate_iterations(const dataflow::PipelineGraph& g,
                               std::uint64_t items_per_iteration,
                               std::uint64_t iterations, const SimOptions& options = {});

}  // namespace hflow::sim
