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

#include "mapper/simulation.hpp"

#include "mapper/errors.hpp"

namespace mapper {

Simulation::Simulation(WorldState world, const SimulationConfig& cfg)
    : cfg_(cfg),
      world_(std::move(world)),
      start_time_(world_.time),
      horizon_(cfg.horizon > 0 ? cfg.horizon : DefaultHorizon(*world_.map)),
      history_(cfg.history),
      obstacles_(world_.map, cfg.sensing_range) {
  cfg_.reward.Validate();
  history_.Update(world_);
  paths_.reserve(world_.agents.size());
  trackers_.reserve(world_.agents.size());
  for (const AgentState& a : world_.agents) {
    paths_.push_back(PlanReferencePath(*world_.map, a.pos, a.goal));
    trackers_.emplace_back(SelectWaypoints(paths_.back(), cfg_.waypoint_interval),
                           cfg_.reach_radius);
    trackers_.back().Advance(a.pos);
  }
}

Cell Simulation::target(int agent) const {
  return cfg_.guidance ? trackers_[agent].current() : world_.agents[agent].goal;
}

ObservationTensor Simulation::Observe(int agent) const {
  return Encode(world_, agent, history_, paths_[agent],
                EncodeOptions{cfg_.trajectory_channel, cfg_.guidance});
}

WaypointFeature Simulation::Waypoint(int agent) const {
  return MakeWaypointFeature(world_.agents[agent].pos, target(agent));
}

Simulation::Transition Simulation::Advance(std::span<const Action> agent_actions) {
  if (Finished()) throw ContractViolation("episode already finished");
  const std::vector<Action> obstacle_actions = obstacles_.DecideAll(world_);
  Transition tr;
  tr.outcomes = StepInPlace(world_, agent_actions, obstacle_actions);
  history_.Update(world_);
  tr.rewards.resize(world_.agents.size(), 0.0);
  for (std::size_t i = 0; i < world_.agents.size(); ++i) {
    const AgentState& a = world_.agents[i];
    tr.rewards[i] = ComputeReward(tr.outcomes[i], a.pos, paths_[i], cfg_.reward);
    trackers_[i].Advance(a.pos);
  }
  return tr;
}

std::vector<Action> Simulation::LraActions() {
  if (!lra_) lra_.emplace(world_.map, cfg_.sensing_range);
  return lra_->Coordinate(world_);
}

}  // namespace mapper
