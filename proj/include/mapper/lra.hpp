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

#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "mapper/dstar_lite.hpp"
#include "mapper/world.hpp"

namespace mapper {

// Next-step claims, granted first come first served.
class ReservationTable {
 public:
  struct Claim {
    int entity;
    Cell from;
    Cell to;
    bool granted;
  };

  // Grants the move unless `to` is already claimed or the move would swap
  // cells with an earlier grant.
  bool Request(int entity, Cell from, Cell to);

  const std::vector<Claim>& claims() const { return claims_; }
  // No two granted claims share a target and no granted pair swaps.
  bool Valid() const;

 private:
  std::vector<Claim> claims_;
};

// One entity's local-repair planner: a cost map built from what it senses
// and a private D* Lite instance for its current goal.
class LocalPlanner {
 public:
  explicit LocalPlanner(std::shared_ptr<const GridMap> map);

  // Rebuilds the transient layer from `sensed` (cells of other entities) and
  // returns the D* Lite next cell, or empty when blocked.
  std::optional<Cell> NextCell(Cell pos, Cell goal, std::span<const Cell> sensed);

  const CostMap& costmap() const { return costmap_; }

 private:
  std::shared_ptr<const GridMap> map_;
  CostMap costmap_;
  std::optional<DStarLite> dstar_;
};

// LRA*: every live agent re-plans with D* Lite on its locally updated cost
// map, then a coordinator grants next-step claims in ascending agent id.
class LraCoordinator {
 public:
  LraCoordinator(std::shared_ptr<const GridMap> map, int sensing_range = 7);

  std::vector<Action> Coordinate(const WorldState& world);

  const ReservationTable& last_claims() const { return table_; }
  void set_debug_log(std::ostream* log) { log_ = log; }

 private:
  std::shared_ptr<const GridMap> map_;
  int sensing_range_;
  std::vector<std::optional<LocalPlanner>> planners_;
  ReservationTable table_;
  std::ostream* log_ = nullptr;
};

// Drives dynamic obstacles towards random goals. Cooperative obstacles run
// LRA* around agents and other obstacles and arbitrate among themselves;
// non-cooperative ones sense only static cells and other obstacles.
class ObstacleController {
 public:
  ObstacleController(std::shared_ptr<const GridMap> map, int sensing_range = 7);

  // Proposal of one obstacle. An obstacle standing on its goal first draws a
  // new goal from world.rng.
  Action Decide(WorldState& world, int obstacle_index);

  // Decisions for every obstacle, with cooperative claims arbitrated.
  std::vector<Action> DecideAll(WorldState& world);

 private:
  std::shared_ptr<const GridMap> map_;
  int sensing_range_;
  std::vector<int> component_;
  std::vector<std::optional<LocalPlanner>> planners_;
};

}  // namespace mapper
