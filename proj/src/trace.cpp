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

#include "mapper/trace.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mapper/errors.hpp"

namespace mapper {

using nlohmann::json;

namespace {

json CellJson(Cell c) { return json::array({c.x, c.y}); }

Cell JsonCell(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("trace cell must be [x, y]");
  return {j[0].get<int>(), j[1].get<int>()};
}

json CellsJson(const std::vector<Cell>& cells) {
  json a = json::array();
  for (Cell c : cells) a.push_back(CellJson(c));
  return a;
}

std::vector<Cell> JsonCells(const json& j) {
  std::vector<Cell> out;
  for (const json& c : j) out.push_back(JsonCell(c));
  return out;
}

}  // namespace

void Trace::Record(const WorldState& world) {
  TraceFrame f;
  for (const AgentState& a : world.agents) {
    f.agents.push_back(a.pos);
    f.done.push_back(a.done);
  }
  for (const DynObstacle& o : world.obstacles) f.obstacles.push_back(o.pos);
  frames.push_back(std::move(f));
}

Trace StartTrace(const WorldState& world, const std::vector<std::vector<Cell>>& paths) {
  Trace t{*world.map, {}, paths, {}, {}};
  for (const AgentState& a : world.agents) t.goals.push_back(a.goal);
  for (const DynObstacle& o : world.obstacles) t.cooperative.push_back(o.cooperative);
  t.Record(world);
  return t;
}

std::string TraceToJson(const Trace& t) {
  json paths = json::array();
  for (const auto& p : t.paths) paths.push_back(CellsJson(p));
  json frames = json::array();
  for (const TraceFrame& f : t.frames) {
    frames.push_back({{"agents", CellsJson(f.agents)},
                      {"done", f.done},
                      {"obstacles", CellsJson(f.obstacles)}});
  }
  json doc = {{"format", "mapper-trace"},
              {"version", 1},
              {"map", t.map.ToText()},
              {"goals", CellsJson(t.goals)},
              {"paths", paths},
              {"cooperative", t.cooperative},
              {"frames", frames}};
  return doc.dump() + "\n";
}

Trace TraceFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("corrupt trace: ") + e.what());
  }
  try {
    if (doc.value("format", std::string()) != "mapper-trace" || doc.value("version", 0) != 1) {
      throw ParseError("corrupt trace: unknown format or version");
    }
    Trace t{LoadMap(doc.at("map").get<std::string>()), {}, {}, {}, {}};
    t.goals = JsonCells(doc.at("goals"));
    for (const json& p : doc.at("paths")) t.paths.push_back(JsonCells(p));
    t.cooperative = doc.at("cooperative").get<std::vector<std::uint8_t>>();
    const std::size_t n = t.goals.size();
    const std::size_t m = t.cooperative.size();
    if (t.paths.size() != n) throw ParseError("corrupt trace: path count differs from goals");
    for (const json& fj : doc.at("frames")) {
      TraceFrame f;
      f.agents = JsonCells(fj.at("agents"));
      f.done = fj.at("done").get<std::vector<std::uint8_t>>();
      f.obstacles = JsonCells(fj.at("obstacles"));
      if (f.agents.size() != n || f.done.size() != n || f.obstacles.size() != m) {
        throw ParseError("corrupt trace: frame " + std::to_string(t.frames.size()) +
                         " has the wrong entity count");
      }
      for (Cell c : f.agents) {
        if (!t.map.InBounds(c)) throw ParseError("corrupt trace: agent outside the map");
      }
      for (Cell c : f.obstacles) {
        if (!t.map.InBounds(c)) throw ParseError("corrupt trace: obstacle outside the map");
      }
      t.frames.push_back(std::move(f));
    }
    if (t.frames.empty()) throw ParseError("corrupt trace: no frames");
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("corrupt trace: ") + e.what());
  }
}

void WriteTrace(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write trace " + path.string());
  out << TraceToJson(trace);
}

Trace ReadTrace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open trace " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return TraceFromJson(ss.str());
}

std::string RenderAscii(const Trace& t, std::size_t frame) {
  if (frame >= t.frames.size()) throw ContractViolation("frame index out of range");
  const int w = t.map.width(), h = t.map.height();
  std::vector<std::string> rows(h, std::string(w, '.'));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (t.map.IsBlocked({x, y})) rows[y][x] = '#';
    }
  }
  for (const auto& p : t.paths) {
    for (Cell c : p) rows[c.y][c.x] = '*';
  }
  for (Cell g : t.goals) rows[g.y][g.x] = 'g';
  const TraceFrame& f = t.frames[frame];
  for (std::size_t j = 0; j < f.obstacles.size(); ++j) {
    rows[f.obstacles[j].y][f.obstacles[j].x] = t.cooperative[j] ? 'O' : 'X';
  }
  for (std::size_t i = 0; i < f.agents.size(); ++i) {
    rows[f.agents[i].y][f.agents[i].x] = f.done[i] ? 'a' : static_cast<char>('A' + i % 26);
  }
  std::string out;
  for (const std::string& r : rows) out += r + '\n';
  return out;
}

std::string RenderPpm(const Trace& t, std::size_t frame, int scale) {
  if (frame >= t.frames.size()) throw ContractViolation("frame index out of range");
  if (scale < 1) throw ContractViolation("scale must be positive");
  using Rgb = std::array<std::uint8_t, 3>;
  const int w = t.map.width(), h = t.map.height();
  std::vector<Rgb> cells(static_cast<std::size_t>(w) * h, Rgb{255, 255, 255});
  auto at = [&](Cell c) -> Rgb& { return cells[static_cast<std::size_t>(c.y) * w + c.x]; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (t.map.IsBlocked({x, y})) at({x, y}) = {40, 40, 40};
    }
  }
  for (const auto& p : t.paths) {
    for (Cell c : p) at(c) = {200, 220, 255};
  }
  for (Cell g : t.goals) at(g) = {80, 200, 80};
  const TraceFrame& f = t.frames[frame];
  for (std::size_t j = 0; j < f.obstacles.size(); ++j) {
    at(f.obstacles[j]) = t.cooperative[j] ? Rgb{255, 160, 0} : Rgb{220, 30, 30};
  }
  for (std::size_t i = 0; i < f.agents.size(); ++i) {
    at(f.agents[i]) = f.done[i] ? Rgb{0, 120, 0} : Rgb{30, 60, 220};
  }
  std::string out = "P6\n" + std::to_string(w * scale) + " " + std::to_string(h * scale) +
                    "\n255\n";
  for (int y = 0; y < h * scale; ++y) {
    for (int x = 0; x < w * scale; ++x) {
      const Rgb& c = cells[static_cast<std::size_t>(y / scale) * w + x / scale];
      out.append(reinterpret_cast<const char*>(c.data()), 3);
    }
  }
  return out;
}

}  // namespace mapper
