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

#include "mapper/observation.hpp"

#include <algorithm>
#include <fstream>

#include "mapper/errors.hpp"

namespace mapper {

HistoryStore::HistoryStore(int horizon) : horizon_(horizon) {
  if (horizon < 1) throw ContractViolation("history horizon must be >= 1");
}

void HistoryStore::Push(std::deque<Cell>& buf, Cell c, int horizon) {
  buf.push_back(c);
  while (static_cast<int>(buf.size()) > horizon) buf.pop_front();
}

void HistoryStore::Update(const WorldState& world) {
  agents_.resize(world.agents.size());
  obstacles_.resize(world.obstacles.size());
  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    Push(agents_[i], world.agents[i].pos, horizon_);
  }
  for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
    Push(obstacles_[i], world.obstacles[i].pos, horizon_);
  }
}

namespace {

struct Window {
  Cell center;

  bool Contains(Cell c) const { return ChebyshevDistance(c, center) <= kSensingRange; }
  int Row(Cell c) const { return c.y - center.y + kSensingRange; }
  int Col(Cell c) const { return c.x - center.x + kSensingRange; }
};

}  // namespace

ObservationTensor Encode(const WorldState& world, int agent_index, const HistoryStore& history,
                         const ReferencePath& ref_path, const EncodeOptions& options) {
  if (agent_index < 0 || agent_index >= static_cast<int>(world.agents.size())) {
    throw ContractViolation("unknown agent index " + std::to_string(agent_index));
  }
  if (options.trajectory_channel && (history.agent_count() != world.agents.size() ||
                                     history.obstacle_count() != world.obstacles.size())) {
    throw ContractViolation("history store does not match the world's entities");
  }
  const GridMap& grid = *world.map;
  const Window win{world.agents[agent_index].pos};
  ObservationTensor obs;

  for (int r = 0; r < kWindow; ++r) {
    for (int c = 0; c < kWindow; ++c) {
      const Cell cell{win.center.x - kSensingRange + c, win.center.y - kSensingRange + r};
      if (grid.InBounds(cell) && grid.IsBlocked(cell)) obs.at(0, r, c) = kStaticValue;
    }
  }

  const int horizon = history.horizon();
  auto mark_trajectory = [&](const std::deque<Cell>& buf) {
    const int len = static_cast<int>(buf.size());
    for (int k = 0; k < len; ++k) {
      const Cell p = buf[k];
      if (!win.Contains(p)) continue;
      // Newest entry maps to 1, older ones step down by 1/H.
      const float value = static_cast<float>(horizon - len + k + 1) / static_cast<float>(horizon);
      float& slot = obs.at(1, win.Row(p), win.Col(p));
      slot = std::max(slot, value);
    }
  };

  for (int i = 0; i < static_cast<int>(world.agents.size()); ++i) {
    if (i == agent_index) continue;
    const Cell p = world.agents[i].pos;
    if (!win.Contains(p)) continue;
    obs.at(0, win.Row(p), win.Col(p)) = kAgentValue;
    if (options.trajectory_channel) mark_trajectory(history.agent(i));
  }
  for (int i = 0; i < static_cast<int>(world.obstacles.size()); ++i) {
    const Cell p = world.obstacles[i].pos;
    if (!win.Contains(p)) continue;
    obs.at(0, win.Row(p), win.Col(p)) = kObstacleValue;
    if (options.trajectory_channel) mark_trajectory(history.obstacle(i));
  }

  if (options.guidance) {
    for (Cell p : ref_path.cells) {
      if (win.Contains(p)) obs.at(2, win.Row(p), win.Col(p)) = 1.0f;
    }
  }
  return obs;
}

WaypointFeature MakeWaypointFeature(Cell agent_pos, Cell waypoint) {
  auto scale = [](int d) {
    return std::clamp(static_cast<double>(d) / kSensingRange, -1.0, 1.0);
  };
  return {scale(waypoint.x - agent_pos.x), scale(waypoint.y - agent_pos.y)};
}

void DumpObservation(const ObservationTensor& obs, const std::filesystem::path& stem, int scale) {
  for (int ch = 0; ch < kObsChannels; ++ch) {
    std::filesystem::path file = stem;
    file += "_c" + std::to_string(ch) + ".pgm";
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    const int side = kWindow * scale;
    out << "P5\n" << side << ' ' << side << "\n255\n";
    for (int y = 0; y < side; ++y) {
      for (int x = 0; x < side; ++x) {
        const float v = obs.at(ch, y / scale, x / scale);
        out.put(static_cast<char>(static_cast<unsigned char>(std::clamp(v, 0.0f, 1.0f) * 255.0f)));
      }
    }
  }
}

}  // namespace mapper
