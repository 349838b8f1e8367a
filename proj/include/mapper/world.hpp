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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mapper/grid.hpp"

namespace mapper {

struct AgentState {
  int id = 0;
  Cell pos;
  // Cell the agent occupied before its most recent successful move.
  Cell prev_pos;
  Cell goal;
  bool done = false;

  bool operator==(const AgentState&) const = default;
};

struct DynObstacle {
  int id = 0;
  Cell pos;
  Cell goal;
  bool cooperative = true;

  bool operator==(const DynObstacle&) const = default;
};

struct WorldState {
  std::shared_ptr<const GridMap> map;
  std::vector<AgentState> agents;
  std::vector<DynObstacle> obstacles;
  std::int64_t time = 0;
  std::mt19937_64 rng;

  int LiveAgentCount() const;
  bool AllAgentsDone() const;
};

struct StepOutcome {
  // False for an agent that was already done before this step.
  bool active = false;
  bool moved = false;
  bool collided = false;
  bool reached_goal = false;
  bool oscillated = false;

  bool operator==(const StepOutcome&) const = default;
};

struct ScenarioParams {
  int n_agents = 0;
  int n_obstacles = 0;
  // Maximum Euclidean start-goal distance for agents; empty means unlimited.
  std::optional<double> goal_range;
  // Minimum Euclidean start-goal distance for agents.
  double min_goal_distance = 0.0;
  int max_retries = 200;
};

WorldState SpawnScenario(std::shared_ptr<const GridMap> map, const ScenarioParams& params,
                         std::uint64_t seed);

struct StepResult {
  WorldState world;
  std::vector<StepOutcome> outcomes;
};

// Simultaneous move of every entity. `agent_actions` carries one entry per
// agent in world.agents (entries for done agents are ignored);
// `obstacle_actions` one per obstacle.
//
// A move succeeds iff its target is in bounds, statically free, unoccupied at
// the start of the step and not claimed by a higher-priority entity.
// Priority: agents before obstacles, ascending id within each group.
StepResult Step(const WorldState& world, std::span<const Action> agent_actions,
                std::span<const Action> obstacle_actions);

// In-place variant of Step; returns the per-agent outcomes.
std::vector<StepOutcome> StepInPlace(WorldState& world, std::span<const Action> agent_actions,
                                     std::span<const Action> obstacle_actions);

// FNV-1a over time and every entity field.
std::uint64_t WorldHash(const WorldState& world);

// Step horizon when none is configured: 256 on a 20x20 map, else 8*(w+h).
int DefaultHorizon(const GridMap& map);

// Scenario files are JSON records holding the map text, entity starts and
// goals, cooperative flags and the seed that produced them.
std::string ScenarioToJson(const WorldState& world, std::uint64_t seed);
WorldState ScenarioFromJson(const std::string& text, std::uint64_t* seed = nullptr);
void WriteScenarioFile(const WorldState& world, std::uint64_t seed,
                       const std::filesystem::path& path);
WorldState ReadScenarioFile(const std::filesystem::path& path, std::uint64_t* seed = nullptr);

}  // namespace mapper
