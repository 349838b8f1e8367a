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
#include <string>
#include <vector>

#include <json.hpp>

#include "mapper/a2c.hpp"
#include "mapper/network.hpp"
#include "mapper/simulation.hpp"
#include "mapper/world.hpp"

namespace mapper {

enum class Mode { kMapper, kLraStar };

std::string ModeName(Mode m);
Mode ParseMode(const std::string& name);

struct MapConfig {
  // Map file; when empty a random map is generated.
  std::string file;
  int width = 20;
  int height = 20;
  double density = 0.2;
  // Draw a fresh random map for every episode instead of one per run.
  bool regenerate = true;
};

struct ScenarioConfig {
  int agents = 4;
  int obstacles = 10;
  // Negative means unlimited.
  double goal_range = 7.0;
  double min_goal_distance = 0.0;
  // 0 selects the map default.
  int horizon = 0;

  ScenarioParams ToParams() const;
};

struct StageConfig {
  std::string name;
  MapConfig map;
  ScenarioConfig scenario;
  std::int64_t episodes = 0;
};

struct RunConfig {
  Mode mode = Mode::kMapper;
  std::uint64_t seed = 1;
  std::vector<StageConfig> stages;

  RewardConfig reward;
  int history = 4;
  bool disable_trajectory_channel = false;
  bool disable_guidance = false;
  int waypoint_interval = 5;
  double reach_radius = 2.0;

  rl::A2CConfig a2c;
  double lr = 3e-4;

  int evolution_interval = 50;
  double evolution_rate = 2.0;
  bool evolution = true;

  nn::NetworkShape network;
  std::uint64_t network_seed = 7;

  std::int64_t checkpoint_every = 1000;
  std::string output_dir = "runs/default";

  // Both curriculum stages with their default settings.
  static RunConfig Defaults();

  SimulationConfig Simulation(const StageConfig& stage) const;
  // Throws ContractViolation describing the first invalid field.
  void Validate() const;
};

nlohmann::json ToJson(const RunConfig& cfg);
RunConfig RunConfigFromJson(const nlohmann::json& j);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Applies "dotted.key=value" overrides to a config document; the value is
// parsed as JSON and falls back to a plain string.
void ApplyOverride(nlohmann::json& doc, const std::string& assignment);

nlohmann::json ToJson(const MapConfig& m);
MapConfig MapConfigFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const ScenarioConfig& s);
ScenarioConfig ScenarioConfigFromJson(const nlohmann::json& j);

// SplitMix64 mix of a base seed with two stream indices.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

// Builds the episode world for (map, scenario, seed). Random maps are drawn
// per seed when `regenerate` is set, otherwise once from `run_seed`.
class WorldFactory {
 public:
  WorldFactory(MapConfig map, ScenarioConfig scenario, std::uint64_t run_seed);

  WorldState Make(std::uint64_t episode_seed) const;

 private:
  MapConfig map_cfg_;
  ScenarioConfig scenario_;
  std::shared_ptr<const GridMap> fixed_map_;
};

}  // namespace mapper
