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
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "mapper/grid.hpp"

namespace mapper {

// Static map plus a transient layer of observed entities that is rebuilt
// every step. Both layers are hard blocks; every passable move costs 1.
class CostMap {
 public:
  explicit CostMap(const GridMap* map);

  const GridMap& map() const { return *map_; }
  int width() const { return map_->width(); }
  int height() const { return map_->height(); }

  bool Passable(Cell c) const {
    return map_->IsFree(c) && transient_[map_->Index(c)] == 0;
  }
  bool TransientBlocked(Cell c) const { return transient_[map_->Index(c)] != 0; }

  // Replaces the transient layer and returns the cells whose state flipped,
  // in ascending index order.
  std::vector<Cell> SetTransient(std::span<const Cell> cells);

 private:
  const GridMap* map_;
  std::vector<std::uint8_t> transient_;
};

// D* Lite with the key modifier, searching backwards from a fixed goal.
class DStarLite {
 public:
  static constexpr int kInf = std::numeric_limits<int>::max() / 4;

  DStarLite(const CostMap& costmap, Cell goal);

  Cell goal() const { return goal_; }

  // Records cells whose cost flipped since the last call; estimates are
  // repaired against the cost map passed to the next Plan.
  void Update(std::span<const Cell> changed);

  // Best neighbour of `start` on the current cost map, or empty when no
  // finite-cost path exists. Ties go to the first move in kMoveActions order.
  // Returns `start` itself when it already is the goal.
  std::optional<Cell> Plan(const CostMap& costmap, Cell start);

  // Cost of the best path from `start` after the last Plan.
  int PathCost(const CostMap& costmap, Cell start) const;

  // Cost-to-goal estimate; exact for `start` and its neighbours after Plan.
  int g(Cell c) const { return g_[Index(c)]; }
  int rhs(Cell c) const { return rhs_[Index(c)]; }
  std::int64_t expansions() const { return expansions_; }

 private:
  using Key = std::pair<int, int>;

  int Index(Cell c) const { return c.y * width_ + c.x; }
  Cell At(int i) const { return {i % width_, i / width_}; }
  int Heuristic(Cell a, Cell b) const { return ChebyshevDistance(a, b); }
  Key CalculateKey(int s) const;
  static int Cost(const CostMap& cm, Cell from, Cell to);
  int BestSuccessorValue(const CostMap& cm, Cell s) const;
  void UpdateVertex(int s);
  bool NeedsWork(const CostMap& cm, Cell start) const;
  void ComputeShortestPath(const CostMap& cm, Cell start);
  void MoveStart(Cell start);
  void RepairAround(const CostMap& cm, Cell changed);

  int width_;
  int height_;
  Cell goal_;
  Cell start_;
  Cell last_start_;
  bool has_start_ = false;
  std::vector<Cell> pending_;
  int km_ = 0;
  std::vector<int> g_;
  std::vector<int> rhs_;
  std::vector<Key> queued_key_;
  std::vector<std::uint8_t> in_queue_;
  std::set<std::pair<Key, int>> open_;
  std::int64_t expansions_ = 0;
};

}  // namespace mapper
