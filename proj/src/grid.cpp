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

#include "mapper/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "mapper/errors.hpp"

namespace mapper {

ParseError::ParseError(const std::string& what, int row, int column)
    : std::runtime_error(row > 0 ? what + " at row " + std::to_string(row) +
                                       ", column " + std::to_string(column)
                                 : what),
      row_(row),
      column_(column) {}

NumericError::NumericError(const std::string& layer, const std::string& what)
    : std::runtime_error(what + " in layer '" + layer + "'"), layer_(layer) {}

Action ActionBetween(Cell from, Cell to) {
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  for (Action a : kAllActions) {
    const Offset d = Displacement(a);
    if (d.dx == dx && d.dy == dy) return a;
  }
  throw ContractViolation("cells are not king-adjacent");
}

std::string_view ActionName(Action a) {
  static constexpr std::array<std::string_view, kNumActions> kNames = {
      "Wait", "N", "NE", "E", "SE", "S", "SW", "W", "NW"};
  return kNames[static_cast<int>(a)];
}

int ChebyshevDistance(Cell a, Cell b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

double EuclideanDistance(Cell a, Cell b) {
  return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

bool KingAdjacentOrEqual(Cell a, Cell b) { return ChebyshevDistance(a, b) <= 1; }

GridMap::GridMap(int width, int height, std::vector<std::uint8_t> blocked)
    : width_(width), height_(height), blocked_(std::move(blocked)) {
  if (width < 2 || height < 2) {
    throw ContractViolation("map must be at least 2x2");
  }
  if (blocked_.size() != static_cast<std::size_t>(width) * height) {
    throw ContractViolation("occupancy size does not match map dimensions");
  }
}

int GridMap::ObstacleCount() const {
  return static_cast<int>(std::count_if(blocked_.begin(), blocked_.end(),
                                        [](std::uint8_t b) { return b != 0; }));
}

std::vector<Cell> GridMap::FreeCells() const {
  std::vector<Cell> cells;
  for (int i = 0; i < cell_count(); ++i) {
    if (!blocked_[i]) cells.push_back(CellAt(i));
  }
  return cells;
}

std::vector<int> GridMap::ComponentLabels() const {
  std::vector<int> label(cell_count(), -1);
  std::vector<int> stack;
  int next = 0;
  for (int i = 0; i < cell_count(); ++i) {
    if (blocked_[i] || label[i] >= 0) continue;
    label[i] = next;
    stack.push_back(i);
    while (!stack.empty()) {
      const Cell c = CellAt(stack.back());
      stack.pop_back();
      for (Action a : kMoveActions) {
        const Cell n = Apply(c, a);
        if (IsBlocked(n)) continue;
        const int j = Index(n);
        if (label[j] < 0) {
          label[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  return label;
}

std::string GridMap::ToText() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(width_ + 1) * height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out += blocked_[Index({x, y})] ? '#' : '.';
    out += '\n';
  }
  return out;
}

GridMap LoadMap(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(start, end - start);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    rows.push_back(row);
    start = end + 1;
  }
  if (rows.empty() || rows.front().empty()) {
    throw ParseError("empty map", rows.empty() ? 0 : 1, rows.empty() ? 0 : 1);
  }

  const int width = static_cast<int>(rows.front().size());
  const int height = static_cast<int>(rows.size());
  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    const std::string_view row = rows[y];
    if (static_cast<int>(row.size()) != width) {
      throw ParseError("ragged row: expected " + std::to_string(width) +
                           " cells, found " + std::to_string(row.size()),
                       y + 1, static_cast<int>(std::min<std::size_t>(row.size(), width)) + 1);
    }
    for (int x = 0; x < width; ++x) {
      switch (row[x]) {
        case '.': break;
        case '#': blocked[static_cast<std::size_t>(y) * width + x] = 1; break;
        default:
          throw ParseError(std::string("illegal character '") + row[x] + "'", y + 1, x + 1);
      }
    }
  }
  if (width < 2 || height < 2) {
    throw ParseError("map must be at least 2x2", 1, 1);
  }
  return GridMap(width, height, std::move(blocked));
}

GridMap ReadMapFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open map file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return LoadMap(ss.str());
}

void WriteMapFile(const GridMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write map file " + path.string());
  out << map.ToText();
}

GridMap GenerateRandomMap(int width, int height, double density, std::uint64_t seed) {
  if (density < 0.0 || density >= 1.0) {
    throw ContractViolation("obstacle density must lie in [0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(width) * height);
  for (auto& b : blocked) b = unit(rng) < density ? 1 : 0;

  const GridMap raw(width, height, blocked);
  const std::vector<int> label = raw.ComponentLabels();
  std::vector<int> sizes;
  for (int l : label) {
    if (l < 0) continue;
    if (l >= static_cast<int>(sizes.size())) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  if (sizes.empty()) throw ContractViolation("random map has no free cells");
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  for (std::size_t i = 0; i < blocked.size(); ++i) {
    if (label[i] != keep) blocked[i] = 1;
  }
  return GridMap(width, height, std::move(blocked));
}

}  // namespace mapper
