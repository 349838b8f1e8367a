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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mapper/config.hpp"
#include "mapper/network.hpp"
#include "mapper/simulation.hpp"

namespace mapper {

struct EvalSuite {
  std::string name = "suite";
  MapConfig map;
  ScenarioConfig scenario;
  int episodes = 100;
  std::uint64_t seed = 1;
};

struct EvalOptions {
  Mode mode = Mode::kMapper;
  // Every agent acts greedily from this policy; required in mapper mode.
  std::optional<nn::ParamSet> policy;
  SimulationConfig sim;
  // When set, one trace per episode is written here.
  std::filesystem::path record_dir;
  // Number of episodes to record; negative records all of them.
  int record_limit = -1;
};

struct EpisodeRecord {
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> success;
  int steps = 0;
  int collisions = 0;
};

struct EvalReport {
  std::string suite;
  std::string mode;
  std::uint64_t seed = 0;
  int episodes = 0;
  std::int64_t agent_episodes = 0;
  std::int64_t successes = 0;
  // Fraction of (agent, episode) pairs that reached their goal.
  double success_rate = 0.0;
  // Standard deviation of the per-episode success fraction.
  double success_rate_std = 0.0;
  // Fraction of episodes in which every agent reached its goal.
  double all_success_rate = 0.0;
  double mean_steps = 0.0;
  std::int64_t collisions = 0;
  double mean_collisions = 0.0;
  std::vector<EpisodeRecord> per_episode;

  nlohmann::json ToJson() const;
  // One row per (episode, agent).
  std::string ToCsv() const;
};

EvalReport Evaluate(const EvalSuite& suite, const EvalOptions& opts);

}  // namespace mapper
