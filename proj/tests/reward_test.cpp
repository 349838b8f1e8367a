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

#include <cmath>

#include <gtest/gtest.h>

#include "mapper/errors.hpp"
#include "mapper/reward.hpp"

namespace mapper {
namespace {

ReferencePath Line() { return ReferencePath{{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}}; }

TEST(OffRoute, OnPathIsZero) { EXPECT_EQ(OffRoutePenalty({2, 0}, Line().cells), 0.0); }

TEST(OffRoute, NearestOfTwo) {
  const std::vector<Cell> path = {{3, 3}, {4, 4}};
  EXPECT_EQ(OffRoutePenalty({3, 4}, path), -1.0);
}

TEST(OffRoute, PythagoreanTriple) {
  const std::vector<Cell> path = {{3, 4}};
  EXPECT_EQ(OffRoutePenalty({0, 0}, path), -5.0);
}

TEST(OffRoute, EmptyPathRejected) {
  EXPECT_THROW(OffRoutePenalty({0, 0}, std::span<const Cell>{}), ContractViolation);
}

TEST(OffRoute, ZeroIffOnPathAndBoundedByDiagonal) {
  const ReferencePath p{{{1, 1}, {2, 2}, {3, 2}, {4, 3}}};
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const double r = OffRoutePenalty({x, y}, p.cells);
      EXPECT_EQ(r == 0.0, p.Contains({x, y}));
      EXPECT_GE(r, -std::hypot(8.0, 8.0));
    }
  }
}

TEST(RewardConfig, Validation) {
  RewardConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.move = 0.1;
  EXPECT_THROW(c.Validate(), ContractViolation);
  c = {};
  c.goal = 0;
  EXPECT_THROW(c.Validate(), ContractViolation);
  c = {};
  c.lambda = -1;
  EXPECT_THROW(c.Validate(), ContractViolation);
}

TEST(Reward, NoEventsWithoutLambdaIsStepOrWait) {
  RewardConfig c;
  c.lambda = 0;
  const ReferencePath p = Line();
  for (int x = 0; x < 6; ++x) {
    for (int y = 0; y < 3; ++y) {
      const double moved = ComputeReward({true, true, false, false, false}, {x, y}, p, c);
      const double waited = ComputeReward({true, false, false, false, false}, {x, y}, p, c);
      EXPECT_EQ(moved, -0.1);
      EXPECT_EQ(waited, -0.5);
    }
  }
}

TEST(Reward, DoneAgentEarnsNothing) {
  EXPECT_EQ(ComputeReward({false, false, false, false, false}, {9, 9}, Line(), {}), 0.0);
}

TEST(Reward, Pure) {
  const StepOutcome o{true, true, false, false, true};
  EXPECT_EQ(ComputeReward(o, {2, 3}, Line(), {}), ComputeReward(o, {2, 3}, Line(), {}));
}

}  // namespace
}  // namespace mapper
