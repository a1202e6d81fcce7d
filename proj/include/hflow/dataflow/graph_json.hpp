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

#include "json.hpp"

#include "hflow/dataflow/graph.hpp"

namespace hflow::dataflow {

// JSON mapping of graphs; see docs/graph_schema.md. Readers throw
// ParseError on missing keys or wrong types; they do not validate.
nlohmann::ordered_json to_json(const MemorySystemSpec& m);
nlohmann::ordered_json to_json(const PipelineGraph& g);

MemorySystemSpec memory_from_json(const nlohmann::json& j);
PipelineGraph graph_from_json(const nlohmann::json& j);

PipelineGraph parse_graph(const std::string& text);
PipelineGraph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const PipelineGraph& g);

}  // namespace hflow::dataflow
