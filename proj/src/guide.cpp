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

#include "mapper/guide.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <tuple>

#include "mapper/errors.hpp"

namespace mapper {

bool ReferencePath::Contains(Cell c) const {
  return std::find(cells.begin(), cells.end(), c) != cells.end();
}

namespace {

struct OpenEntry {
  int f;
  int h;
  Cell cell;

  bool operator>(const OpenEntry& o) const {
    return std::tie(f, h, cell) > std::tie(o.f, o.h, o.cell);
  }
};

}  // namespace

std::optional<ReferencePath> AStarSearch(int width, int height, const PassableFn& passable,
                                         Cell start, Cell goal) {
  auto in_bounds = [&](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; };
  if (!in_bounds(start) || !in_bounds(goal)) throw ContractViolation("A* endpoint out of bounds");
  if (start != goal && !passable(goal)) return std::nullopt;

  const int n = width * height;
  auto index = [width](Cell c) { return c.y * width + c.x; };
  constexpr int kUnseen = -1;
  std::vector<int> g(n, kUnseen);
  std::vector<int> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<>> open;

  g[index(start)] = 0;
  open.push({ChebyshevDistance(start, goal), ChebyshevDistance(start, goal), start});
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const int ti = index(top.cell);
    if (closed[ti]) continue;
    closed[ti] = 1;
    if (top.cell == goal) break;
    for (Action a : kMoveActions) {
      const Cell next = Apply(top.cell, a);
      if (!in_bounds(next) || !passable(next)) continue;
      const int ni = index(next);
      if (closed[ni]) continue;
      const int cost = g[ti] + 1;
      if (g[ni] == kUnseen || cost < g[ni]) {
        g[ni] = cost;
        parent[ni] = ti;
        const int h = ChebyshevDistance(next, goal);
        open.push({cost + h, h, next});
      }
    }
  }
  if (!closed[index(goal)]) return std::nullopt;

  ReferencePath path;
  for (int i = index(goal); i != -1; i = parent[i]) path.cells.push_back({i % width, i / width});
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

ReferencePath PlanReferencePath(const GridMap& map, Cell start, Cell goal) {
  if (map.IsBlocked(start) || map.IsBlocked(goal)) {
    throw PlanningError("reference path endpoints must be free cells");
  }
  auto path = AStarSearch(
      map.width(), map.height(), [&map](Cell c) { return map.IsFree(c); }, start, goal);
  if (!path) {
    throw PlanningError("goal (" + std::to_string(goal.x) + "," + std::to_string(goal.y) +
                        ") unreachable from (" + std::to_string(start.x) + "," +
                        std::to_string(start.y) + ")");
  }
  return *path;
}

std::vector<Cell> SelectWaypoints(const ReferencePath& path, int interval) {
  if (interval < 1) throw ContractViolation("waypoint interval must be >= 1");
  if (path.empty()) throw ContractViolation("cannot select waypoints on an empty path");
  std::vector<Cell> out;
  const std::size_t last = path.cells.size() - 1;
  for (std::size_t i = interval; i < last; i += interval) out.push_back(path.cells[i]);
  out.push_back(path.cells[last]);
  return out;
}

WaypointTracker::WaypointTracker(std::vector<Cell> waypoints, double reach_radius)
    : waypoints_(std::move(waypoints)), reach_radius_(reach_radius) {
  if (waypoints_.empty()) throw ContractViolation("waypoint tracker needs at least one waypoint");
  if (reach_radius < 0) throw ContractViolation("reach radius must be non-negative");
}

Cell WaypointTracker::Advance(Cell pos) {
  while (!at_last() && EuclideanDistance(pos, waypoints_[index_]) <= reach_radius_) ++index_;
  return waypoints_[index_];
}

std::string PathToText(const ReferencePath& path) {
  std::string out;
  for (Cell c : path.cells) out += std::to_string(c.x) + "," + std::to_string(c.y) + "\n";
  return out;
}

ReferencePath PathFromText(std::string_view text) {
  ReferencePath path;
  std::istringstream in{std::string(text)};
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected x,y", row, 1);
    try {
      path.cells.push_back({std::stoi(line.substr(0, comma)), std::stoi(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw ParseError("bad coordinate", row, 1);
    }
  }
  return path;
}

void WritePathFile(const ReferencePath& path, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write path file " + file.string());
  out << PathToText(path);
}

}  // namespace mapper
