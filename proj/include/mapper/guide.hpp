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

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mapper/grid.hpp"

namespace mapper {

// Ordered start-to-goal cells; consecutive cells are king-adjacent.
struct ReferencePath {
  std::vector<Cell> cells;

  bool empty() const { return cells.empty(); }
  std::size_t size() const { return cells.size(); }
  // Number of moves.
  int length() const { return cells.empty() ? 0 : static_cast<int>(cells.size()) - 1; }
  bool Contains(Cell c) const;
};

using PassableFn = std::function<bool(Cell)>;

// 8-connected A* with unit move cost and the Chebyshev heuristic. Open-list
// ties break on lower f, then lower h, then lexicographic cell order; the
// neighbour expansion order is kMoveActions. Empty when the goal cannot be
// reached. `start` itself is always treated as passable.
std::optional<ReferencePath> AStarSearch(int width, int height, const PassableFn& passable,
                                         Cell start, Cell goal);

// Reference path on the static map; throws PlanningError when unreachable.
ReferencePath PlanReferencePath(const GridMap& map, Cell start, Cell goal);

// Path cells at indices interval, 2*interval, ... followed by the goal
// exactly once.
std::vector<Cell> SelectWaypoints(const ReferencePath& path, int interval = 5);

class WaypointTracker {
 public:
  WaypointTracker(std::vector<Cell> waypoints, double reach_radius = 2.0);

  // Advances past every non-final waypoint within reach_radius (Euclidean) of
  // `pos` and returns the current waypoint.
  Cell Advance(Cell pos);

  Cell current() const { return waypoints_[index_]; }
  int current_index() const { return index_; }
  bool at_last() const { return index_ + 1 == static_cast<int>(waypoints_.size()); }
  // The final waypoint only counts when the agent stands on it.
  bool GoalReached(Cell pos) const { return at_last() && pos == waypoints_.back(); }
  const std::vector<Cell>& waypoints() const { return waypoints_; }
  double reach_radius() const { return reach_radius_; }

 private:
  std::vector<Cell> waypoints_;
  int index_ = 0;
  double reach_radius_;
};

// "x,y" per line.
std::string PathToText(const ReferencePath& path);
ReferencePath PathFromText(std::string_view text);
void WritePathFile(const ReferencePath& path, const std::filesystem::path& file);

}  // namespace mapper
