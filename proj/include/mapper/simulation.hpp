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
#include <span>
#include <vector>

#include "mapper/guide.hpp"
#include "mapper/lra.hpp"
#include "mapper/observation.hpp"
#include "mapper/reward.hpp"
#include "mapper/world.hpp"

namespace mapper {

struct SimulationConfig {
  RewardConfig reward;
  int history = 4;
  int waypoint_interval = 5;
  double reach_radius = 2.0;
  int sensing_range = kSensingRange;
  // 0 selects DefaultHorizon(map).
  int horizon = 0;
  bool trajectory_channel = true;
  bool guidance = true;
};

// One episode of the shared world: entity histories, per-agent reference
// paths and waypoint trackers, and the dynamic-obstacle controller.
class Simulation {
 public:
  Simulation(WorldState world, const SimulationConfig& cfg);

  const WorldState& world() const { return world_; }
  const SimulationConfig& config() const { return cfg_; }
  int horizon() const { return horizon_; }
  int steps() const { return static_cast<int>(world_.time - start_time_); }
  bool HorizonReached() const { return steps() >= horizon_; }
  bool Finished() const { return world_.AllAgentsDone() || HorizonReached(); }

  const ReferencePath& ref_path(int agent) const { return paths_[agent]; }
  const WaypointTracker& tracker(int agent) const { return trackers_[agent]; }
  // Target fed to the waypoint feature: the tracked waypoint, or the final
  // goal when guidance is disabled.
  Cell target(int agent) const;

  ObservationTensor Observe(int agent) const;
  WaypointFeature Waypoint(int agent) const;

  struct Transition {
    std::vector<StepOutcome> outcomes;
    std::vector<double> rewards;
  };

  // Obstacles decide first, then every entity moves simultaneously.
  Transition Advance(std::span<const Action> agent_actions);

  // LRA* actions for every agent (Wait for done agents).
  std::vector<Action> LraActions();

 private:
  SimulationConfig cfg_;
  WorldState world_;
  std::int64_t start_time_;
  int horizon_;
  HistoryStore history_;
  std::vector<ReferencePath> paths_;
  std::vector<WaypointTracker> trackers_;
  ObstacleController obstacles_;
  std::optional<LraCoordinator> lra_;
};

}  // namespace mapper
