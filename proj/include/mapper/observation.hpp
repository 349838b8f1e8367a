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

#include <array>
#include <deque>
#include <filesystem>
#include <vector>

#include "mapper/grid.hpp"
#include "mapper/guide.hpp"
#include "mapper/world.hpp"

namespace mapper {

inline constexpr int kSensingRange = 7;
inline constexpr int kWindow = 2 * kSensingRange + 1;
inline constexpr int kObsChannels = 3;
inline constexpr int kObsSize = kObsChannels * kWindow * kWindow;

inline constexpr float kStaticValue = 1.0f;
inline constexpr float kObstacleValue = 0.75f;
inline constexpr float kAgentValue = 0.5f;

// Egocentric 3x15x15 image, channel-major then row (y) then column (x).
// Channel 0 holds current occupancy, channel 1 trajectories, channel 2 the
// agent's reference path.
struct ObservationTensor {
  std::array<float, kObsSize> values{};

  float& at(int channel, int row, int col) {
    return values[(channel * kWindow + row) * kWindow + col];
  }
  float at(int channel, int row, int col) const {
    return values[(channel * kWindow + row) * kWindow + col];
  }
  bool operator==(const ObservationTensor&) const = default;
};

// Last H positions of every agent and dynamic obstacle, oldest first.
class HistoryStore {
 public:
  explicit HistoryStore(int horizon = 4);

  // Appends the current position of every entity. Call once after spawning
  // and once after every step.
  void Update(const WorldState& world);

  const std::deque<Cell>& agent(int index) const { return agents_[index]; }
  const std::deque<Cell>& obstacle(int index) const { return obstacles_[index]; }
  int horizon() const { return horizon_; }
  std::size_t agent_count() const { return agents_.size(); }
  std::size_t obstacle_count() const { return obstacles_.size(); }

 private:
  static void Push(std::deque<Cell>& buf, Cell c, int horizon);

  int horizon_;
  std::vector<std::deque<Cell>> agents_;
  std::vector<std::deque<Cell>> obstacles_;
};

struct EncodeOptions {
  bool trajectory_channel = true;
  bool guidance = true;
};

// Observation of agent `agent_index` (an index into world.agents).
ObservationTensor Encode(const WorldState& world, int agent_index, const HistoryStore& history,
                         const ReferencePath& ref_path, const EncodeOptions& options = {});

struct WaypointFeature {
  double dx = 0.0;
  double dy = 0.0;

  bool operator==(const WaypointFeature&) const = default;
};

// Waypoint offset scaled by the sensing range and clamped to [-1, 1].
WaypointFeature MakeWaypointFeature(Cell agent_pos, Cell waypoint);

// Writes <stem>_c0.pgm, <stem>_c1.pgm, <stem>_c2.pgm.
void DumpObservation(const ObservationTensor& obs, const std::filesystem::path& stem,
                     int scale = 8);

}  // namespace mapper
