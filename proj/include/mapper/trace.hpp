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
#include <string>
#include <vector>

#include "mapper/grid.hpp"
#include "mapper/world.hpp"

namespace mapper {

struct TraceFrame {
  std::vector<Cell> agents;
  std::vector<std::uint8_t> done;
  std::vector<Cell> obstacles;
};

// Recorded episode: the map, goals, reference paths and one frame per world
// state (initial state included).
struct Trace {
  GridMap map;
  std::vector<Cell> goals;
  std::vector<std::vector<Cell>> paths;
  std::vector<std::uint8_t> cooperative;
  std::vector<TraceFrame> frames;

  // Appends the current world state as a frame.
  void Record(const WorldState& world);
};

Trace StartTrace(const WorldState& world, const std::vector<std::vector<Cell>>& paths);

std::string TraceToJson(const Trace& trace);
// Throws ParseError on malformed or inconsistent traces.
Trace TraceFromJson(const std::string& text);
void WriteTrace(const Trace& trace, const std::filesystem::path& path);
Trace ReadTrace(const std::filesystem::path& path);

// ASCII frame: '#' static, 'A'-'Z' agents (by id mod 26), 'a' done agents,
// 'O' cooperative and 'X' non-cooperative obstacles, 'g' goals, '*' path.
std::string RenderAscii(const Trace& trace, std::size_t frame);

// Binary PPM (P6) frame with `scale` pixels per cell.
std::string RenderPpm(const Trace& trace, std::size_t frame, int scale = 8);

}  // namespace mapper
