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
#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mapper {

struct Cell {
  int x = 0;
  int y = 0;

  // Lexicographic on (x, y).
  auto operator<=>(const Cell&) const = default;
};

// Wait plus the eight king moves. North is towards row 0.
enum class Action : std::uint8_t { kWait = 0, kN, kNE, kE, kSE, kS, kSW, kW, kNW };

inline constexpr int kNumActions = 9;

inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kWait, Action::kN,  Action::kNE, Action::kE, Action::kSE,
    Action::kS,    Action::kSW, Action::kW,  Action::kNW};

// Moves in the canonical neighbour order used by every search in the project.
inline constexpr std::array<Action, 8> kMoveActions = {
    Action::kN, Action::kNE, Action::kE, Action::kSE,
    Action::kS, Action::kSW, Action::kW, Action::kNW};

struct Offset {
  int dx = 0;
  int dy = 0;
};

constexpr Offset Displacement(Action a) {
  switch (a) {
    case Action::kWait: return {0, 0};
    case Action::kN: return {0, -1};
    case Action::kNE: return {1, -1};
    case Action::kE: return {1, 0};
    case Action::kSE: return {1, 1};
    case Action::kS: return {0, 1};
    case Action::kSW: return {-1, 1};
    case Action::kW: return {-1, 0};
    case Action::kNW: return {-1, -1};
  }
  return {0, 0};
}

constexpr Cell Apply(Cell c, Action a) {
  const Offset d = Displacement(a);
  return {c.x + d.dx, c.y + d.dy};
}

// Action taking `from` to the king-adjacent (or equal) cell `to`.
Action ActionBetween(Cell from, Cell to);

std::string_view ActionName(Action a);

int ChebyshevDistance(Cell a, Cell b);
double EuclideanDistance(Cell a, Cell b);
bool KingAdjacentOrEqual(Cell a, Cell b);

// Static occupancy grid. Immutable once constructed.
class GridMap {
 public:
  GridMap(int width, int height, std::vector<std::uint8_t> blocked);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  bool InBounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  // Out-of-bounds cells count as blocked.
  bool IsBlocked(Cell c) const { return !InBounds(c) || blocked_[Index(c)] != 0; }
  bool IsFree(Cell c) const { return !IsBlocked(c); }

  int Index(Cell c) const { return c.y * width_ + c.x; }
  Cell CellAt(int index) const { return {index % width_, index / width_}; }

  int ObstacleCount() const;
  std::vector<Cell> FreeCells() const;

  // Label of the 8-connected free component of every cell (-1 for blocked).
  std::vector<int> ComponentLabels() const;

  std::string ToText() const;

  bool operator==(const GridMap&) const = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> blocked_;
};

// Parses rows of '.' (free) and '#' (static obstacle). A trailing newline and
// CRLF line endings are accepted.
GridMap LoadMap(std::string_view text);
GridMap ReadMapFile(const std::filesystem::path& path);
void WriteMapFile(const GridMap& map, const std::filesystem::path& path);

// Uniform random obstacles at `density`; every free cell outside the largest
// 8-connected free component is filled so that all free cells are mutually
// reachable.
GridMap GenerateRandomMap(int width, int height, double density, std::uint64_t seed);

}  // namespace mapper
