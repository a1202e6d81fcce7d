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
#include "hflow/common/error.hpp"

#include <sstream>

namespace hflow {
namespace {

std::string join_lines(const std::string& head, const std::vector<std::string>& items) {
  std::ostringstream out;
  out << head;
  for (const auto& item : items) out << "\n  " << item;
  return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_lines("validation failed:", violations)),
      violations_(std::move(violations)) {}

DeadlockError::DeadlockError(unsigned long long cycle, std::vector<std::string> blocked)
    : Error(join_lines("deadlock at cycle " + std::to_string(cycle) + ", blocked:", blocked)),
      cycle_(cycle),
      blocked_(std::move(blocked)) {}

}  // namespace hflow
