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

#include "mapper/reward.hpp"

#include <limits>

#include "mapper/errors.hpp"

namespace mapper {

void RewardConfig::Validate() const {
  if (move > 0 || wait > 0 || collision > 0 || oscillation > 0) {
    throw ContractViolation("reward penalties must be <= 0");
  }
  if (goal <= 0) throw ContractViolation("goal reward must be positive");
  if (lambda < 0) throw ContractViolation("off-route weight must be non-negative");
}

double OffRoutePenalty(Cell pos, std::span<const Cell> path) {
  if (path.empty()) throw ContractViolation("off-route penalty needs a non-empty path");
  double best = std::numeric_limits<double>::infinity();
  for (Cell p : path) {
    const double d = EuclideanDistance(pos, p);
    if (d < best) best = d;
    if (best == 0.0) break;
  }
  return -best;
}

double ComputeReward(const StepOutcome& outcome, Cell pos, const ReferencePath& ref_path,
                     const RewardConfig& cfg) {
  if (!outcome.active) return 0.0;
  double r = outcome.moved ? cfg.move : cfg.wait;
  if (outcome.collided) r += cfg.collision;
  if (outcome.oscillated) r += cfg.oscillation;
  if (outcome.reached_goal) r += cfg.goal;
  if (cfg.lambda != 0.0) r += cfg.lambda * OffRoutePenalty(pos, ref_path.cells);
  return r;
}

}  // namespace mapper
