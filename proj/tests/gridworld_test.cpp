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

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "mapper/errors.hpp"
#include "mapper/grid.hpp"
#include "mapper/world.hpp"
#include "oracles.hpp"

namespace mapper {
namespace {

using testing::MakeWorld;
using testing::OpenMap;

TEST(LoadMap, AllFree) {
  const GridMap m = LoadMap("..\n..");
  EXPECT_EQ(m.width(), 2);
  EXPECT_EQ(m.height(), 2);
  EXPECT_EQ(m.ObstacleCount(), 0);
}

TEST(LoadMap, Transcription) {
  const GridMap m = LoadMap(".#\n#.\n");
  EXPECT_TRUE(m.IsBlocked({1, 0}));
  EXPECT_TRUE(m.IsBlocked({0, 1}));
  EXPECT_TRUE(m.IsFree({0, 0}));
  EXPECT_TRUE(m.IsFree({1, 1}));
}

TEST(LoadMap, CrlfAccepted) { EXPECT_EQ(LoadMap("..\r\n.#\r\n"), LoadMap("..\n.#")); }

TEST(LoadMap, RaggedRowReportsLocation) {
  try {
    LoadMap("...\n..\n...");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2);
  }
}

TEST(LoadMap, IllegalCharacterReportsLocation) {
  try {
    LoadMap("...\n.x.\n...");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2);
    EXPECT_EQ(e.column(), 2);
  }
}

TEST(LoadMap, EmptyInputRejected) {
  EXPECT_THROW(LoadMap(""), ParseError);
  EXPECT_THROW(LoadMap("."), ParseError);  // narrower than 2
}

TEST(LoadMap, ObstacleCountMatchesCharacterCount) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::string text = GenerateRandomMap(20, 20, 0.2, seed).ToText();
    EXPECT_EQ(LoadMap(text).ObstacleCount(), std::count(text.begin(), text.end(), '#'));
  }
}

TEST(LoadMap, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "mapper_roundtrip.map";
  const GridMap m = GenerateRandomMap(9, 7, 0.3, 4);
  WriteMapFile(m, path);
  EXPECT_EQ(ReadMapFile(path), m);
  std::filesystem::remove(path);
}

TEST(RandomMap, FreeCellsFormOneComponent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GridMap m = GenerateRandomMap(20, 20, 0.3, seed);
    std::set<int> labels;
    for (int l : m.ComponentLabels()) {
      if (l >= 0) labels.insert(l);
    }
    EXPECT_LE(labels.size(), 1u);
  }
}

TEST(Actions, NineMembersWithUnitDisplacements) {
  EXPECT_EQ(kAllActions.size(), 9u);
  std::set<std::pair<int, int>> seen;
  for (Action a : kMoveActions) {
    const Offset d = Displacement(a);
    EXPECT_LE(std::abs(d.dx), 1);
    EXPECT_LE(std::abs(d.dy), 1);
    EXPECT_FALSE(d.dx == 0 && d.dy == 0);
    seen.insert({d.dx, d.dy});
    EXPECT_EQ(ActionBetween({5, 5}, Apply({5, 5}, a)), a);
  }
  EXPECT_EQ(seen.size(), 8u);
}

TEST(Spawn, StageOneExample) {
  auto map = std::make_shared<const GridMap>(LoadMap(OpenMap(20, 20)));
  ScenarioParams p;
  p.n_agents = 4;
  p.n_obstacles = 10;
  p.goal_range = 7.0;
  const WorldState w = SpawnScenario(map, p, 42);
  std::set<Cell> starts;
  for (const auto& a : w.agents) {
    starts.insert(a.pos);
    EXPECT_LE(EuclideanDistance(a.pos, a.goal), 7.0);
  }
  for (const auto& o : w.obstacles) starts.insert(o.pos);
  EXPECT_EQ(starts.size(), 14u);
  EXPECT_EQ(std::count_if(w.obstacles.begin(), w.obstacles.end(),
                          [](const DynObstacle& o) { return !o.cooperative; }),
            5);
}

TEST(Spawn, Vacuous) {
  auto map = std::make_shared<const GridMap>(LoadMap(OpenMap(5, 5)));
  const WorldState w = SpawnScenario(map, {}, 0);
  EXPECT_TRUE(w.agents.empty());
  EXPECT_TRUE(w.obstacles.empty());
}

TEST(Spawn, Deterministic) {
  auto map = std::make_shared<const GridMap>(GenerateRandomMap(20, 20, 0.2, 3));
  ScenarioParams p{6, 7, 7.0, 0.0, 200};
  EXPECT_EQ(WorldHash(SpawnScenario(map, p, 9)), WorldHash(SpawnScenario(map, p, 9)));
  EXPECT_NE(WorldHash(SpawnScenario(map, p, 9)), WorldHash(SpawnScenario(map, p, 10)));
}

TEST(Spawn, GoalsReachableAndDistinct) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto map = std::make_shared<const GridMap>(GenerateRandomMap(20, 20, 0.25, seed));
    ScenarioParams p{8, 6, std::nullopt, 0.0, 200};
    const WorldState w = SpawnScenario(map, p, seed);
    std::set<Cell> goals;
    for (const auto& a : w.agents) {
      goals.insert(a.goal);
      EXPECT_NE(testing::BfsDistance(*map, a.pos, a.goal), testing::kUnreachable);
    }
    EXPECT_EQ(goals.size(), w.agents.size());
  }
}

TEST(Spawn, MinimumDistanceRespected) {
  auto map = std::make_shared<const GridMap>(GenerateRandomMap(40, 40, 0.2, 1));
  ScenarioParams p{5, 0, std::nullopt, 25.0, 200};
  const WorldState w = SpawnScenario(map, p, 5);
  for (const auto& a : w.agents) EXPECT_GE(EuclideanDistance(a.pos, a.goal), 25.0);
}

TEST(Spawn, InfeasibleThrows) {
  auto map = std::make_shared<const GridMap>(LoadMap("..\n.."));
  ScenarioParams p{3, 3, std::nullopt, 0.0, 20};
  EXPECT_THROW(SpawnScenario(map, p, 1), ScenarioError);
}

TEST(Step, UnobstructedMove) {
  WorldState w = MakeWorld(OpenMap(4, 4), {{0, {0, 0}, {0, 0}, {3, 3}, false}});
  const Action a[] = {Action::kE};
  const auto r = Step(w, a, {});
  EXPECT_EQ(r.world.agents[0].pos, (Cell{1, 0}));
  EXPECT_TRUE(r.outcomes[0].moved);
  EXPECT_FALSE(r.outcomes[0].collided);
  EXPECT_EQ(r.world.time, 1);
}

TEST(Step, StaticObstacleBlocks) {
  WorldState w = MakeWorld(".#..\n....\n", {{0, {0, 0}, {0, 0}, {3, 1}, false}});
  const Action a[] = {Action::kE};
  const auto r = Step(w, a, {});
  EXPECT_EQ(r.world.agents[0].pos, (Cell{0, 0}));
  EXPECT_FALSE(r.outcomes[0].moved);
  EXPECT_TRUE(r.outcomes[0].collided);
}

TEST(Step, OutOfBoundsIsCollision) {
  WorldState w = MakeWorld(OpenMap(3, 3), {{0, {0, 0}, {0, 0}, {2, 2}, false}});
  const Action a[] = {Action::kNW};
  const auto r = Step(w, a, {});
  EXPECT_EQ(r.world.agents[0].pos, (Cell{0, 0}));
  EXPECT_TRUE(r.outcomes[0].collided);
}

TEST(Step, SwapBlocksBoth) {
  WorldState w = MakeWorld(OpenMap(4, 4), {{0, {0, 0}, {0, 0}, {3, 3}, false},
                                           {1, {1, 0}, {1, 0}, {3, 2}, false}});
  const Action a[] = {Action::kE, Action::kW};
  const auto r = Step(w, a, {});
  EXPECT_EQ(r.world.agents[0].pos, (Cell{0, 0}));
  EXPECT_EQ(r.world.agents[1].pos, (Cell{1, 0}));
  EXPECT_TRUE(r.outcomes[0].collided);
  EXPECT_TRUE(r.outcomes[1].collided);
}

TEST(Step, ContentionLowerIdWins) {
  WorldState w = MakeWorld(OpenMap(4, 4), {{1, {2, 0}, {2, 0}, {3, 3}, false},
                                           {0, {0, 0}, {0, 0}, {3, 2}, false}});
  const Action a[] = {Action::kW, Action::kE};
  const auto r = Step(w, a, {});
  EXPECT_EQ(r.world.agents[1].pos, (Cell{1, 0}));
  EXPECT_EQ(r.world.agents[0].pos, (Cell{2, 0}));
  EXPECT_TRUE(r.outcomes[0].collided);
  EXPECT_FALSE(r.outcomes[1].collided);
}

TEST(Step, AgentBeatsObstacleInContention) {
  WorldState w = MakeWorld(OpenMap(4, 4), {{5, {0, 0}, {0, 0}, {3, 3}, false}},
                           {{0, {2, 0}, {0, 3}, true}});
  const Action a[] = {Action::kE};
  const Action o[] = {Action::kW};
  const auto r = Step(w, a, o);
  EXPECT_EQ(r.world.agents[0].pos, (Cell{1, 0}));
  EXPECT_EQ(r.world.obstacles[0].pos, (Cell{2, 0}));
}

TEST(Step, FollowingIntoVacatedCellFails) {
  // Pre-step occupancy: the cell being vacated still counts as occupied.
  WorldState w = MakeWorld(OpenMap(4, 2), {{0, {0, 0}, {0, 0}, {3, 0}, false},
                                                {1, {1, 0}, {1, 0}, {2, 0}, false}});
  const Action a[] = {Action::kE, Action::kE};
  const auto r = Step(w, a, {});
  EXPECT_EQ(r.world.agents[0].pos, (Cell{0, 0}));
  EXPECT_TRUE(r.outcomes[0].collided);
  EXPECT_EQ(r.world.agents[1].pos, (Cell{2, 0}));
}

TEST(Step, GoalAndDoneSemantics) {
  WorldState w = MakeWorld(OpenMap(3, 3), {{0, {0, 0}, {0, 0}, {1, 1}, false}});
  const Action a[] = {Action::kSE};
  auto r = Step(w, a, {});
  EXPECT_TRUE(r.outcomes[0].reached_goal);
  EXPECT_TRUE(r.world.agents[0].done);
  const Action b[] = {Action::kE};
  r = Step(r.world, b, {});
  EXPECT_EQ(r.world.agents[0].pos, (Cell{1, 1}));
  EXPECT_FALSE(r.outcomes[0].active);
  EXPECT_FALSE(r.outcomes[0].moved);
  EXPECT_FALSE(r.outcomes[0].collided);
}

TEST(Step, DoneAgentStillOccupies) {
  WorldState w = MakeWorld(OpenMap(3, 3), {{0, {1, 1}, {1, 1}, {1, 1}, true},
                                           {1, {0, 1}, {0, 1}, {2, 1}, false}});
  const Action a[] = {Action::kWait, Action::kE};
  const auto r = Step(w, a, {});
  EXPECT_EQ(r.world.agents[1].pos, (Cell{0, 1}));
  EXPECT_TRUE(r.outcomes[1].collided);
}

TEST(Step, Oscillation) {
  WorldState w = MakeWorld(OpenMap(4, 4), {{0, {0, 0}, {0, 0}, {3, 3}, false}});
  const Action e[] = {Action::kE};
  const Action wst[] = {Action::kW};
  const Action wait[] = {Action::kWait};
  auto r = Step(w, e, {});
  EXPECT_FALSE(r.outcomes[0].oscillated);
  r = Step(r.world, wait, {});
  EXPECT_FALSE(r.outcomes[0].oscillated);
  r = Step(r.world, wst, {});
  EXPECT_TRUE(r.outcomes[0].oscillated);
  EXPECT_TRUE(r.outcomes[0].moved);
}

TEST(Step, MalformedActionCount) {
  WorldState w = MakeWorld(OpenMap(3, 3), {{0, {0, 0}, {0, 0}, {2, 2}, false}});
  EXPECT_THROW(Step(w, std::span<const Action>{}, {}), ContractViolation);
  const Action a[] = {Action::kE};
  const Action o[] = {Action::kE};
  EXPECT_THROW(Step(w, a, o), ContractViolation);
}

// Exhaustive two-agent conflict enumeration against a hand-executed rule set.
TEST(Step, TwoAgentConflictsMatchRules) {
  const std::string text = OpenMap(5, 5);
  for (int bx = 0; bx < 5; ++bx) {
    for (int by = 0; by < 5; ++by) {
      const Cell a0{2, 2}, b0{bx, by};
      if (a0 == b0) continue;
      for (Action aa : kAllActions) {
        for (Action ab : kAllActions) {
          WorldState w = MakeWorld(text, {{0, a0, a0, {4, 4}, false}, {1, b0, b0, {0, 4}, false}});
          if (b0 == Cell{4, 4} || a0 == Cell{0, 4}) continue;
          const Action acts[] = {aa, ab};
          const auto r = Step(w, acts, {});
          auto in = [](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < 5 && c.y < 5; };
          const Cell ta = Apply(a0, aa), tb = Apply(b0, ab);
          const bool a_moves = aa != Action::kWait && in(ta) && ta != b0;
          const bool b_moves =
              ab != Action::kWait && in(tb) && tb != a0 && !(a_moves && tb == ta);
          ASSERT_EQ(r.world.agents[0].pos, a_moves ? ta : a0);
          ASSERT_EQ(r.world.agents[1].pos, b_moves ? tb : b0);
          ASSERT_EQ(r.outcomes[0].collided, aa != Action::kWait && !a_moves);
          ASSERT_EQ(r.outcomes[1].collided, ab != Action::kWait && !b_moves);
        }
      }
    }
  }
}

TEST(StepProperty, RandomRolloutsKeepInvariants) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto map = std::make_shared<const GridMap>(GenerateRandomMap(12, 12, 0.2, seed));
    WorldState w = SpawnScenario(map, {6, 6, std::nullopt, 0.0, 200}, seed);
    for (int t = 0; t < 60; ++t) {
      std::vector<Action> aa(w.agents.size()), oa(w.obstacles.size());
      for (auto& a : aa) a = kAllActions[rng() % 9];
      for (auto& a : oa) a = kAllActions[rng() % 9];
      const WorldState before = w;
      const auto out = StepInPlace(w, aa, oa);
      EXPECT_EQ(w.time, before.time + 1);
      std::set<Cell> cells;
      for (std::size_t i = 0; i < w.agents.size(); ++i) {
        const auto& a = w.agents[i];
        cells.insert(a.pos);
        EXPECT_TRUE(map->IsFree(a.pos));
        EXPECT_TRUE(KingAdjacentOrEqual(a.pos, before.agents[i].pos));
        if (before.agents[i].done) {
          EXPECT_EQ(a.pos, before.agents[i].pos);
        }
        if (out[i].oscillated) {
          EXPECT_TRUE(out[i].moved);
        }
        if (out[i].reached_goal) {
          EXPECT_EQ(a.pos, a.goal);
        }
      }
      for (std::size_t j = 0; j < w.obstacles.size(); ++j) {
        cells.insert(w.obstacles[j].pos);
        EXPECT_TRUE(map->IsFree(w.obstacles[j].pos));
        EXPECT_TRUE(KingAdjacentOrEqual(w.obstacles[j].pos, before.obstacles[j].pos));
      }
      EXPECT_EQ(cells.size(), w.agents.size() + w.obstacles.size());
    }
  }
}

TEST(StepProperty, AllWaitIsIdentity) {
  auto map = std::make_shared<const GridMap>(GenerateRandomMap(10, 10, 0.2, 2));
  WorldState w = SpawnScenario(map, {4, 4, std::nullopt, 0.0, 200}, 2);
  const std::vector<Action> aa(4, Action::kWait), oa(4, Action::kWait);
  const auto r = Step(w, aa, oa);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.world.agents[i].pos, w.agents[i].pos);
    EXPECT_FALSE(r.outcomes[i].collided);
    EXPECT_EQ(r.world.obstacles[i].pos, w.obstacles[i].pos);
  }
}

TEST(StepProperty, ReplayReproducesHashes) {
  auto map = std::make_shared<const GridMap>(GenerateRandomMap(10, 10, 0.2, 5));
  const WorldState start = SpawnScenario(map, {4, 4, std::nullopt, 0.0, 200}, 5);
  std::vector<std::uint64_t> first;
  for (int pass = 0; pass < 2; ++pass) {
    WorldState w = start;
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
      std::vector<Action> aa(4), oa(4);
      for (auto& a : aa) a = kAllActions[rng() % 9];
      for (auto& a : oa) a = kAllActions[rng() % 9];
      StepInPlace(w, aa, oa);
      if (pass == 0) {
        first.push_back(WorldHash(w));
      } else {
        EXPECT_EQ(WorldHash(w), first[t]);
      }
    }
  }
}

TEST(Scenario, JsonRoundTrip) {
  auto map = std::make_shared<const GridMap>(GenerateRandomMap(15, 11, 0.2, 8));
  const WorldState w = SpawnScenario(map, {3, 4, 6.0, 0.0, 200}, 8);
  std::uint64_t seed = 0;
  const WorldState r = ScenarioFromJson(ScenarioToJson(w, 8), &seed);
  EXPECT_EQ(seed, 8u);
  EXPECT_EQ(*r.map, *w.map);
  EXPECT_EQ(r.agents, w.agents);
  EXPECT_EQ(r.obstacles, w.obstacles);
  EXPECT_EQ(WorldHash(r), WorldHash(w));
}

TEST(Horizon, Defaults) {
  EXPECT_EQ(DefaultHorizon(LoadMap(OpenMap(20, 20))), 256);
  EXPECT_EQ(DefaultHorizon(LoadMap(OpenMap(40, 40))), 640);
}

}  // namespace
}  // namespace mapper
