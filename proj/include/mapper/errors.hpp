// Copyright 2026 The MAPPER Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mapper {

// Malformed map, scenario, config or trace text. Row and column are 1-based;
// zero means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int row = 0, int column = 0);

  int row() const { return row_; }
  int column() const { return column_; }

 private:
  int row_;
  int column_;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& layer, const std::string& what);

  const std::string& layer() const { return layer_; }

 private:
  std::string layer_;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mapper
