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

#include <stdexcept>
#include <string>
#include <vector>

namespace hflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Malformed input document (JSON, CSV, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised when a graph or configuration fails validation. Carries every
// violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// The simulator made no progress and has no pending timed event.
class DeadlockError : public Error {
 public:
  DeadlockError(unsigned long long cycle, std::vector<std::string> blocked);

  unsigned long long cycle() const { return cycle_; }
  const std::vector<std::string>& blocked() const { return blocked_; }

 private:
  unsigned long long cycle_;
  std::vector<std::string> blocked_;
};

}  // namespace hflow
