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

#include "mapper/lra.hpp"

#include <algorithm>

#include "mapper/errors.hpp"

namespace mapper {

bool ReservationTable::Request(int entity, Cell from, Cell to) {
  bool ok = true;
  for (const Claim& c : claims_) {
    if (!c.granted) continue;
    if (c.to == to || (c.to == from && c.from == to)) {
      ok = false;
      break;
    }
  }
  claims_.push_back({entity, from, to, ok});
  return ok;
}

bool ReservationTable::Valid() const {
  for (std::size_t i = 0; i < claims_.size(); ++i) {
    if (!claims_[i].granted) continue;
    for (std::size_t j = i + 1; j < claims_.size(); ++j) {
      if (!claims_[j].granted) continue;
      if (claims_[i].to == claims_[j].to) return false;
      if (claims_[i].to == claims_[j].from && claims_[i].from == claims_[j].to) return false;
    }
  }
  return true;
}

LocalPlanner::LocalPlanner(std::shared_ptr<const GridMap> map)
    : map_(std::move(map)), costmap_(map_.get()) {}

std::optional<Cell> LocalPlanner::NextCell(Cell pos, Cell goal, std::span<const Cell> sensed) {
  const std::vector<Cell> changed = costmap_.SetTransient(sensed);
  if (!dstar_ || dstar_->goal() != goal) {
    dstar_.emplace(costmap_, goal);
  } else {
    dstar_->Update(changed);
  }
  return dstar_->Plan(costmap_, pos);
}

namespace {

Action ToAction(Cell pos, const std::optional<Cell>& next) {
  if (!next || *next == pos) return Action::kWait;
  return ActionBetween(pos, *next);
}

}  // namespace

LraCoordinator::LraCoordinator(std::shared_ptr<const GridMap> map, int sensing_range)
    : map_(std::move(map)), sensing_range_(sensing_range) {}

std::vector<Action> LraCoordinator::Coordinate(const WorldState& world) {
  if (world.map.get() != map_.get()) throw ContractViolation("coordinator bound to another map");
  const std::size_t n = world.agents.size();
  planners_.resize(n);
  std::vector<std::optional<Cell>> proposal(n);
  std::vector<Cell> sensed;
  for (std::size_t i = 0; i < n; ++i) {
    const AgentState& agent = world.agents[i];
    if (agent.done) continue;
    sensed.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && ChebyshevDistance(world.agents[j].pos, agent.pos) <= sensing_range_) {
        sensed.push_back(world.agents[j].pos);
      }
    }
    for (const DynObstacle& o : world.obstacles) {
      if (ChebyshevDistance(o.pos, agent.pos) <= sensing_range_) sensed.push_back(o.pos);
    }
    if (!planners_[i]) planners_[i].emplace(map_);
    proposal[i] = planners_[i]->NextCell(agent.pos, agent.goal, sensed);
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return world.agents[a].id < world.agents[b].id; });

  table_ = ReservationTable();
  std::vector<Action> actions(n, Action::kWait);
  for (std::size_t i : order) {
    const AgentState& agent = world.agents[i];
    if (agent.done) continue;
    const Action wanted = ToAction(agent.pos, proposal[i]);
    if (wanted == Action::kWait) continue;
    if (table_.Request(agent.id, agent.pos, *proposal[i])) actions[i] = wanted;
  }
  if (log_) {
    for (const auto& c : table_.claims()) {
      *log_ << world.time << ",agent," << c.entity << ',' << c.from.x << ',' << c.from.y << ','
            << c.to.x << ',' << c.to.y << ',' << (c.granted ? "granted" : "denied") << '\n';
    }
  }
  return actions;
}

ObstacleController::ObstacleController(std::shared_ptr<const GridMap> map, int sensing_range)
    : map_(std::move(map)), sensing_range_(sensing_range), component_(map_->ComponentLabels()) {}

Action ObstacleController::Decide(WorldState& world, int obstacle_index) {
  if (world.map.get() != map_.get()) throw ContractViolation("controller bound to another map");
  planners_.resize(world.obstacles.size());
  DynObstacle& self = world.obstacles[obstacle_index];

  if (self.pos == self.goal) {
    std::vector<Cell> candidates;
    const int label = component_[map_->Index(self.pos)];
    for (int i = 0; i < map_->cell_count(); ++i) {
      const Cell c = map_->CellAt(i);
      if (component_[i] == label && c != self.pos) candidates.push_back(c);
    }
    if (candidates.empty()) return Action::kWait;
    self.goal = candidates[std::uniform_int_distribution<std::size_t>(
        0, candidates.size() - 1)(world.rng)];
  }

  std::vector<Cell> sensed;
  if (self.cooperative) {
    for (const AgentState& a : world.agents) {
      if (ChebyshevDistance(a.pos, self.pos) <= sensing_range_) sensed.push_back(a.pos);
    }
  }
  for (std::size_t j = 0; j < world.obstacles.size(); ++j) {
    if (static_cast<int>(j) == obstacle_index) continue;
    if (ChebyshevDistance(world.obstacles[j].pos, self.pos) <= sensing_range_) {
      sensed.push_back(world.obstacles[j].pos);
    }
  }
  auto& planner = planners_[obstacle_index];
  if (!planner) planner.emplace(map_);
  return ToAction(self.pos, planner->NextCell(self.pos, self.goal, sensed));
}

std::vector<Action> ObstacleController::DecideAll(WorldState& world) {
  std::vector<Action> actions(world.obstacles.size(), Action::kWait);
  ReservationTable cooperative;
  for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
    const Action a = Decide(world, static_cast<int>(i));
    const DynObstacle& o = world.obstacles[i];
    if (a == Action::kWait) continue;
    if (!o.cooperative || cooperative.Request(o.id, o.pos, Apply(o.pos, a))) actions[i] = a;
  }
  return actions;
}

}  // namespace mapper
