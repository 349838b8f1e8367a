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

#include "mapper/world.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mapper/errors.hpp"

namespace mapper {

int WorldState::LiveAgentCount() const {
  return static_cast<int>(
      std::count_if(agents.begin(), agents.end(), [](const AgentState& a) { return !a.done; }));
}

bool WorldState::AllAgentsDone() const { return LiveAgentCount() == 0; }

namespace {

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

WorldState SpawnScenario(std::shared_ptr<const GridMap> map, const ScenarioParams& params,
                         std::uint64_t seed) {
  if (!map) throw ContractViolation("scenario needs a map");
  if (params.n_agents < 0 || params.n_obstacles < 0) {
    throw ContractViolation("entity counts must be non-negative");
  }
  const GridMap& grid = *map;
  const std::vector<Cell> free = grid.FreeCells();
  if (static_cast<std::size_t>(params.n_agents + params.n_obstacles) > free.size()) {
    throw ScenarioError("not enough free cells for " +
                        std::to_string(params.n_agents + params.n_obstacles) + " entities");
  }

  std::mt19937_64 rng(seed);
  const std::vector<int> label = grid.ComponentLabels();
  std::vector<std::uint8_t> start_taken(grid.cell_count(), 0);
  std::vector<std::uint8_t> goal_taken(grid.cell_count(), 0);

  auto pick_start = [&]() {
    std::vector<Cell> open;
    for (Cell c : free) {
      if (!start_taken[grid.Index(c)]) open.push_back(c);
    }
    return open[UniformIndex(rng, open.size())];
  };

  WorldState world;
  world.map = map;
  for (int i = 0; i < params.n_agents; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < params.max_retries && !placed; ++attempt) {
      const Cell start = pick_start();
      std::vector<Cell> candidates;
      for (Cell c : free) {
        const int ci = grid.Index(c);
        if (c == start || goal_taken[ci] || label[ci] != label[grid.Index(start)]) continue;
        const double d = EuclideanDistance(start, c);
        if (d < params.min_goal_distance) continue;
        if (params.goal_range && d > *params.goal_range) continue;
        candidates.push_back(c);
      }
      if (candidates.empty()) continue;
      const Cell goal = candidates[UniformIndex(rng, candidates.size())];
      start_taken[grid.Index(start)] = 1;
      goal_taken[grid.Index(goal)] = 1;
      world.agents.push_back({i, start, start, goal, false});
      placed = true;
    }
    if (!placed) {
      throw ScenarioError("could not place agent " + std::to_string(i) + " after " +
                          std::to_string(params.max_retries) + " attempts");
    }
  }

  for (int i = 0; i < params.n_obstacles; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < params.max_retries && !placed; ++attempt) {
      const Cell start = pick_start();
      std::vector<Cell> candidates;
      for (Cell c : free) {
        if (c != start && label[grid.Index(c)] == label[grid.Index(start)]) candidates.push_back(c);
      }
      if (candidates.empty()) continue;
      const Cell goal = candidates[UniformIndex(rng, candidates.size())];
      start_taken[grid.Index(start)] = 1;
      world.obstacles.push_back({i, start, goal, true});
      placed = true;
    }
    if (!placed) {
      throw ScenarioError("could not place obstacle " + std::to_string(i));
    }
  }

  std::vector<int> order(params.n_obstacles);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int k = 0; k < params.n_obstacles / 2; ++k) world.obstacles[order[k]].cooperative = false;

  world.rng = rng;
  return world;
}

std::vector<StepOutcome> StepInPlace(WorldState& world, std::span<const Action> agent_actions,
                                     std::span<const Action> obstacle_actions) {
  if (agent_actions.size() != world.agents.size()) {
    throw ContractViolation("expected " + std::to_string(world.agents.size()) +
                            " agent actions, got " + std::to_string(agent_actions.size()));
  }
  if (obstacle_actions.size() != world.obstacles.size()) {
    throw ContractViolation("expected " + std::to_string(world.obstacles.size()) +
                            " obstacle actions, got " + std::to_string(obstacle_actions.size()));
  }
  const GridMap& grid = *world.map;

  // 0 free, 1 occupied at step start, 2 claimed this step.
  std::vector<std::uint8_t> occ(grid.cell_count(), 0);
  for (const AgentState& a : world.agents) occ[grid.Index(a.pos)] = 1;
  for (const DynObstacle& o : world.obstacles) occ[grid.Index(o.pos)] = 1;

  auto try_move = [&](Cell from, Action a) -> std::optional<Cell> {
    if (a == Action::kWait) return std::nullopt;
    const Cell target = Apply(from, a);
    if (grid.IsBlocked(target) || occ[grid.Index(target)] != 0) return std::nullopt;
    occ[grid.Index(target)] = 2;
    return target;
  };

  // Agents are processed in ascending id order.
  std::vector<std::size_t> agent_order(world.agents.size());
  std::iota(agent_order.begin(), agent_order.end(), 0);
  std::sort(agent_order.begin(), agent_order.end(), [&](std::size_t a, std::size_t b) {
    return world.agents[a].id < world.agents[b].id;
  });
  std::vector<StepOutcome> outcomes(world.agents.size());
  for (std::size_t i : agent_order) {
    AgentState& agent = world.agents[i];
    if (agent.done) continue;
    StepOutcome& out = outcomes[i];
    out.active = true;
    const Action action = agent_actions[i];
    if (const auto target = try_move(agent.pos, action)) {
      out.moved = true;
      out.oscillated = *target == agent.prev_pos;
      agent.prev_pos = agent.pos;
      agent.pos = *target;
    } else {
      out.collided = action != Action::kWait;
    }
    if (agent.pos == agent.goal) {
      out.reached_goal = true;
      agent.done = true;
    }
  }

  std::vector<std::size_t> obstacle_order(world.obstacles.size());
  std::iota(obstacle_order.begin(), obstacle_order.end(), 0);
  std::sort(obstacle_order.begin(), obstacle_order.end(), [&](std::size_t a, std::size_t b) {
    return world.obstacles[a].id < world.obstacles[b].id;
  });
  for (std::size_t i : obstacle_order) {
    DynObstacle& obstacle = world.obstacles[i];
    if (const auto target = try_move(obstacle.pos, obstacle_actions[i])) obstacle.pos = *target;
  }

  ++world.time;
  return outcomes;
}

StepResult Step(const WorldState& world, std::span<const Action> agent_actions,
                std::span<const Action> obstacle_actions) {
  StepResult result{world, {}};
  result.outcomes = StepInPlace(result.world, agent_actions, obstacle_actions);
  return result;
}

std::uint64_t WorldHash(const WorldState& world) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::int64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(world.time);
  for (const AgentState& a : world.agents) {
    for (int v : {a.id, a.pos.x, a.pos.y, a.prev_pos.x, a.prev_pos.y, a.goal.x, a.goal.y,
                  static_cast<int>(a.done)}) {
      mix(v);
    }
  }
  for (const DynObstacle& o : world.obstacles) {
    for (int v : {o.id, o.pos.x, o.pos.y, o.goal.x, o.goal.y, static_cast<int>(o.cooperative)}) {
      mix(v);
    }
  }
  return h;
}

int DefaultHorizon(const GridMap& map) {
  if (map.width() == 20 && map.height() == 20) return 256;
  return 8 * (map.width() + map.height());
}

namespace {

using nlohmann::json;

json CellJson(Cell c) { return json::array({c.x, c.y}); }

Cell CellFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("cell must be an [x, y] pair");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

std::string ScenarioToJson(const WorldState& world, std::uint64_t seed) {
  json j;
  j["format"] = "mapper-scenario";
  j["version"] = 1;
  j["seed"] = seed;
  j["time"] = world.time;
  j["map"] = world.map->ToText();
  j["agents"] = json::array();
  for (const AgentState& a : world.agents) {
    j["agents"].push_back({{"id", a.id},
                           {"start", CellJson(a.pos)},
                           {"prev", CellJson(a.prev_pos)},
                           {"goal", CellJson(a.goal)},
                           {"done", a.done}});
  }
  j["obstacles"] = json::array();
  for (const DynObstacle& o : world.obstacles) {
    j["obstacles"].push_back({{"id", o.id},
                              {"start", CellJson(o.pos)},
                              {"goal", CellJson(o.goal)},
                              {"cooperative", o.cooperative}});
  }
  std::ostringstream rng_state;
  rng_state << world.rng;
  j["rng"] = rng_state.str();
  return j.dump(1);
}

WorldState ScenarioFromJson(const std::string& text, std::uint64_t* seed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != "mapper-scenario") throw ParseError("not a scenario file");
    WorldState world;
    world.map = std::make_shared<const GridMap>(LoadMap(j.at("map").get<std::string>()));
    world.time = j.value("time", std::int64_t{0});
    for (const json& a : j.at("agents")) {
      AgentState s;
      s.id = a.at("id").get<int>();
      s.pos = CellFromJson(a.at("start"));
      s.prev_pos = a.contains("prev") ? CellFromJson(a.at("prev")) : s.pos;
      s.goal = CellFromJson(a.at("goal"));
      s.done = a.value("done", false);
      if (world.map->IsBlocked(s.pos) || world.map->IsBlocked(s.goal)) {
        throw ParseError("agent " + std::to_string(s.id) + " placed on a blocked cell");
      }
      world.agents.push_back(s);
    }
    for (const json& o : j.at("obstacles")) {
      DynObstacle d;
      d.id = o.at("id").get<int>();
      d.pos = CellFromJson(o.at("start"));
      d.goal = CellFromJson(o.at("goal"));
      d.cooperative = o.at("cooperative").get<bool>();
      if (world.map->IsBlocked(d.pos)) {
        throw ParseError("obstacle " + std::to_string(d.id) + " placed on a blocked cell");
      }
      world.obstacles.push_back(d);
    }
    const std::uint64_t s = j.at("seed").get<std::uint64_t>();
    if (seed) *seed = s;
    if (j.contains("rng")) {
      std::istringstream in(j["rng"].get<std::string>());
      in >> world.rng;
    } else {
      world.rng.seed(s);
    }
    return world;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
}

void WriteScenarioFile(const WorldState& world, std::uint64_t seed,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file " + path.string());
  out << ScenarioToJson(world, seed) << '\n';
}

WorldState ReadScenarioFile(const std::filesystem::path& path, std::uint64_t* seed) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ScenarioFromJson(ss.str(), seed);
}

}  // namespace mapper
