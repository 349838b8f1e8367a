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

#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "mapper/grid.hpp"
#include "mapper/world.hpp"

namespace mapper::testing {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Breadth-first distances from `source` over 8-connected passable cells.
inline std::vector<int> BfsDistances(int width, int height, const std::function<bool(Cell)>& passable,
                                     Cell source) {
  std::vector<int> dist(static_cast<std::size_t>(width) * height, kUnreachable);
  auto idx = [width](Cell c) { return static_cast<std::size_t>(c.y) * width + c.x; };
  std::deque<Cell> queue{source};
  dist[idx(source)] = 0;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell n{c.x + dx, c.y + dy};
        if ((dx == 0 && dy == 0) || n.x < 0 || n.y < 0 || n.x >= width || n.y >= height) continue;
        if (!passable(n) || dist[idx(n)] != kUnreachable) continue;
        dist[idx(n)] = dist[idx(c)] + 1;
        queue.push_back(n);
      }
    }
  }
  return dist;
}

inline int BfsDistance(const GridMap& map, Cell a, Cell b) {
  const auto d = BfsDistances(map.width(), map.height(), [&](Cell c) { return map.IsFree(c); }, a);
  return d[static_cast<std::size_t>(b.y) * map.width() + b.x];
}

// World with hand-placed entities on a map given as text.
inline WorldState MakeWorld(const std::string& map_text, std::vector<AgentState> agents,
                            std::vector<DynObstacle> obstacles = {}) {
  WorldState w;
  w.map = std::make_shared<const GridMap>(LoadMap(map_text));
  for (auto& a : agents) {
    if (a.prev_pos == Cell{} && a.pos != Cell{}) a.prev_pos = a.pos;
  }
  w.agents = std::move(agents);
  w.obstacles = std::move(obstacles);
  w.rng.seed(1);
  return w;
}

inline std::string OpenMap(int w, int h) {
  std::string s;
  for (int y = 0; y < h; ++y) s += std::string(w, '.') + "\n";
  return s;
}

}  // namespace mapper::testing
