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

#include <span>

#include "mapper/grid.hpp"
#include "mapper/guide.hpp"
#include "mapper/world.hpp"

namespace mapper {

struct RewardConfig {
  double move = -0.1;
  double wait = -0.5;
  double collision = -5.0;
  double oscillation = -0.3;
  double goal = 30.0;
  // Weight of the off-route term.
  double lambda = 0.3;

  // Throws ContractViolation on a penalty > 0, goal <= 0 or lambda < 0.
  void Validate() const;
};

// Minus the Euclidean distance from `pos` to the closest path cell.
double OffRoutePenalty(Cell pos, std::span<const Cell> path);

// Per-step reward of one agent; 0 for an agent that was already done.
// Every triggered component accumulates.
double ComputeReward(const StepOutcome& outcome, Cell pos, const ReferencePath& ref_path,
                     const RewardConfig& cfg);

}  // namespace mapper
