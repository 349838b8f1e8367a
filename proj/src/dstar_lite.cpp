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

#include "mapper/dstar_lite.hpp"

#include <algorithm>

#include "mapper/errors.hpp"

namespace mapper {

CostMap::CostMap(const GridMap* map) : map_(map), transient_(map->cell_count(), 0) {}

std::vector<Cell> CostMap::SetTransient(std::span<const Cell> cells) {
  std::vector<std::uint8_t> next(map_->cell_count(), 0);
  for (Cell c : cells) {
    if (map_->InBounds(c)) next[map_->Index(c)] = 1;
  }
  std::vector<Cell> changed;
  for (int i = 0; i < map_->cell_count(); ++i) {
    if (next[i] != transient_[i]) changed.push_back(map_->CellAt(i));
  }
  transient_ = std::move(next);
  return changed;
}

namespace {

int SatAdd(int a, int b) {
  return (a >= DStarLite::kInf || b >= DStarLite::kInf) ? DStarLite::kInf : a + b;
}

}  // namespace

DStarLite::DStarLite(const CostMap& costmap, Cell goal)
    : width_(costmap.width()),
      height_(costmap.height()),
      goal_(goal),
      g_(costmap.width() * costmap.height(), kInf),
      rhs_(costmap.width() * costmap.height(), kInf),
      queued_key_(costmap.width() * costmap.height()),
      in_queue_(costmap.width() * costmap.height(), 0) {
  if (!costmap.map().InBounds(goal)) throw ContractViolation("D* Lite goal out of bounds");
  rhs_[Index(goal)] = 0;
}

DStarLite::Key DStarLite::CalculateKey(int s) const {
  const int m = std::min(g_[s], rhs_[s]);
  return {SatAdd(SatAdd(m, Heuristic(start_, At(s))), km_), m};
}

int DStarLite::Cost(const CostMap& cm, Cell /*from*/, Cell to) {
  return cm.Passable(to) ? 1 : kInf;
}

int DStarLite::BestSuccessorValue(const CostMap& cm, Cell s) const {
  int best = kInf;
  for (Action a : kMoveActions) {
    const Cell n = Apply(s, a);
    if (!cm.map().InBounds(n)) continue;
    best = std::min(best, SatAdd(Cost(cm, s, n), g_[Index(n)]));
  }
  return best;
}

void DStarLite::UpdateVertex(int s) {
  const bool consistent = g_[s] == rhs_[s];
  if (in_queue_[s]) {
    open_.erase({queued_key_[s], s});
    in_queue_[s] = 0;
  }
  if (!consistent) {
    queued_key_[s] = CalculateKey(s);
    open_.insert({queued_key_[s], s});
    in_queue_[s] = 1;
  }
}

// Work remains while the start or any of its neighbours could still be
// inconsistent or carry a key above the queue minimum; this makes the
// neighbour values exact so that tie-breaking is well defined.
bool DStarLite::NeedsWork(const CostMap& cm, Cell start) const {
  if (open_.empty()) return false;
  const Key top = open_.begin()->first;
  auto pending = [&](Cell c) {
    const int i = Index(c);
    return top < CalculateKey(i) || rhs_[i] != g_[i];
  };
  if (pending(start)) return true;
  for (Action a : kMoveActions) {
    const Cell n = Apply(start, a);
    if (cm.map().IsFree(n) && pending(n)) return true;
  }
  return false;
}

void DStarLite::ComputeShortestPath(const CostMap& cm, Cell start) {
  while (NeedsWork(cm, start)) {
    const auto [k_old, u] = *open_.begin();
    const Key k_new = CalculateKey(u);
    ++expansions_;
    if (k_old < k_new) {
      UpdateVertex(u);
      continue;
    }
    const Cell uc = At(u);
    if (g_[u] > rhs_[u]) {
      g_[u] = rhs_[u];
      open_.erase(open_.begin());
      in_queue_[u] = 0;
      for (Action a : kMoveActions) {
        const Cell p = Apply(uc, a);
        if (!cm.map().IsFree(p) || p == goal_) continue;
        const int pi = Index(p);
        rhs_[pi] = std::min(rhs_[pi], SatAdd(Cost(cm, p, uc), g_[u]));
        UpdateVertex(pi);
      }
    } else {
      const int g_old = g_[u];
      g_[u] = kInf;
      auto refresh = [&](Cell p) {
        const int pi = Index(p);
        if (p != goal_ && rhs_[pi] == SatAdd(Cost(cm, p, uc), g_old)) {
          rhs_[pi] = BestSuccessorValue(cm, p);
        }
        UpdateVertex(pi);
      };
      for (Action a : kMoveActions) {
        const Cell p = Apply(uc, a);
        if (cm.map().IsFree(p)) refresh(p);
      }
      // u itself: its rhs never depended on its own g.
      if (u != Index(goal_)) rhs_[u] = BestSuccessorValue(cm, uc);
      UpdateVertex(u);
    }
  }
}

void DStarLite::MoveStart(Cell start) {
  if (!has_start_) {
    start_ = last_start_ = start;
    has_start_ = true;
    UpdateVertex(Index(goal_));
    return;
  }
  if (start != start_) {
    start_ = start;
    km_ = SatAdd(km_, Heuristic(last_start_, start_));
    last_start_ = start_;
  }
}

void DStarLite::RepairAround(const CostMap& cm, Cell changed) {
  // Only edges entering `changed` change cost, so only its neighbours'
  // right-hand sides can move.
  for (Action a : kMoveActions) {
    const Cell p = Apply(changed, a);
    if (!cm.map().IsFree(p) || p == goal_) continue;
    const int pi = Index(p);
    rhs_[pi] = BestSuccessorValue(cm, p);
    UpdateVertex(pi);
  }
}

void DStarLite::Update(std::span<const Cell> changed) {
  pending_.insert(pending_.end(), changed.begin(), changed.end());
}

std::optional<Cell> DStarLite::Plan(const CostMap& costmap, Cell start) {
  if (!costmap.map().InBounds(start)) throw ContractViolation("D* Lite start out of bounds");
  MoveStart(start);
  if (!pending_.empty()) {
    for (Cell c : pending_) RepairAround(costmap, c);
    pending_.clear();
  }
  if (start == goal_) return start;
  ComputeShortestPath(costmap, start);
  int best = kInf;
  std::optional<Cell> next;
  for (Action a : kMoveActions) {
    const Cell n = Apply(start, a);
    if (!costmap.map().InBounds(n)) continue;
    const int v = SatAdd(Cost(costmap, start, n), g_[Index(n)]);
    if (v < best) {
      best = v;
      next = n;
    }
  }
  return next;
}

int DStarLite::PathCost(const CostMap& costmap, Cell start) const {
  if (start == goal_) return 0;
  return BestSuccessorValue(costmap, start);
}

}  // namespace mapper
