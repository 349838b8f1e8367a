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

#include "mapper/config.hpp"

#include <fstream>
#include <sstream>

#include "mapper/checkpoint.hpp"
#include "mapper/errors.hpp"

namespace mapper {

using nlohmann::json;

std::string ModeName(Mode m) { return m == Mode::kMapper ? "mapper" : "lra_star"; }

Mode ParseMode(const std::string& name) {
  if (name == "mapper") return Mode::kMapper;
  if (name == "lra_star" || name == "lra") return Mode::kLraStar;
  throw ParseError("unknown mode '" + name + "' (expected mapper or lra_star)");
}

ScenarioParams ScenarioConfig::ToParams() const {
  ScenarioParams p;
  p.n_agents = agents;
  p.n_obstacles = obstacles;
  if (goal_range >= 0) p.goal_range = goal_range;
  p.min_goal_distance = min_goal_distance;
  return p;
}

RunConfig RunConfig::Defaults() {
  RunConfig cfg;
  StageConfig stage1;
  stage1.name = "stage1";
  stage1.map = MapConfig{"", 20, 20, 0.2, true};
  stage1.scenario = ScenarioConfig{4, 10, 7.0, 0.0, 0};
  stage1.episodes = 20000;
  StageConfig stage2;
  stage2.name = "stage2";
  stage2.map = MapConfig{"", 32, 32, 0.2, true};
  stage2.scenario = ScenarioConfig{20, 30, -1.0, 0.0, 0};
  stage2.episodes = 2000;
  cfg.stages = {stage1, stage2};
  return cfg;
}

SimulationConfig RunConfig::Simulation(const StageConfig& stage) const {
  SimulationConfig s;
  s.reward = reward;
  s.history = history;
  s.waypoint_interval = waypoint_interval;
  s.reach_radius = reach_radius;
  s.horizon = stage.scenario.horizon;
  s.trajectory_channel = !disable_trajectory_channel;
  s.guidance = !disable_guidance;
  return s;
}

void RunConfig::Validate() const {
  auto fail = [](const std::string& what) { throw ContractViolation("invalid config: " + what); };
  reward.Validate();
  if (stages.empty()) fail("at least one stage is required");
  for (const StageConfig& s : stages) {
    if (s.map.file.empty() && (s.map.width < 2 || s.map.height < 2)) fail(s.name + ": map size");
    if (s.map.density < 0 || s.map.density >= 1) fail(s.name + ": density");
    if (s.scenario.agents < 0 || s.scenario.obstacles < 0) fail(s.name + ": entity counts");
    if (s.scenario.horizon < 0) fail(s.name + ": horizon");
    if (s.episodes < 0) fail(s.name + ": episodes");
  }
  if (history < 1) fail("history must be >= 1");
  if (waypoint_interval < 1) fail("waypoint_interval must be >= 1");
  if (reach_radius < 0) fail("reach_radius must be >= 0");
  if (a2c.gamma < 0 || a2c.gamma > 1) fail("gamma must lie in [0, 1]");
  if (lr <= 0) fail("lr must be positive");
  if (evolution_interval < 1) fail("evolution interval must be >= 1");
  if (evolution_rate < 0) fail("evolution rate must be >= 0");
  if (network.conv1 < 1 || network.conv2 < 1 || network.trunk1 < 1 || network.trunk2 < 1 ||
      network.head_hidden < 1 || network.waypoint_hidden < 1 || !(network.value_scale > 0) ||
      !(network.waypoint_gain > 0)) {
    fail("network widths must be positive");
  }
}

json ToJson(const MapConfig& m) {
  return {{"file", m.file},
          {"width", m.width},
          {"height", m.height},
          {"density", m.density},
          {"regenerate", m.regenerate}};
}

MapConfig MapConfigFromJson(const json& j) {
  MapConfig m;
  m.file = j.value("file", m.file);
  m.width = j.value("width", m.width);
  m.height = j.value("height", m.height);
  m.density = j.value("density", m.density);
  m.regenerate = j.value("regenerate", m.regenerate);
  return m;
}

json ToJson(const ScenarioConfig& s) {
  return {{"agents", s.agents},
          {"obstacles", s.obstacles},
          {"goal_range", s.goal_range},
          {"min_goal_distance", s.min_goal_distance},
          {"horizon", s.horizon}};
}

ScenarioConfig ScenarioConfigFromJson(const json& j) {
  ScenarioConfig s;
  s.agents = j.value("agents", s.agents);
  s.obstacles = j.value("obstacles", s.obstacles);
  s.goal_range = j.value("goal_range", s.goal_range);
  s.min_goal_distance = j.value("min_goal_distance", s.min_goal_distance);
  s.horizon = j.value("horizon", s.horizon);
  return s;
}

json ToJson(const RunConfig& c) {
  json stages = json::array();
  for (const StageConfig& s : c.stages) {
    stages.push_back({{"name", s.name},
                      {"map", ToJson(s.map)},
                      {"scenario", ToJson(s.scenario)},
                      {"episodes", s.episodes}});
  }
  return {
      {"mode", ModeName(c.mode)},
      {"seed", c.seed},
      {"stages", stages},
      {"reward",
       {{"move", c.reward.move},
        {"wait", c.reward.wait},
        {"collision", c.reward.collision},
        {"oscillation", c.reward.oscillation},
        {"goal", c.reward.goal},
        {"lambda", c.reward.lambda}}},
      {"observation",
       {{"history", c.history},
        {"disable_trajectory_channel", c.disable_trajectory_channel},
        {"disable_guidance", c.disable_guidance}}},
      {"guidance", {{"waypoint_interval", c.waypoint_interval}, {"reach_radius", c.reach_radius}}},
      {"a2c",
       {{"gamma", c.a2c.gamma},
        {"lr", c.lr},
        {"value_coef", c.a2c.loss.value_coef},
        {"entropy_coef", c.a2c.loss.entropy_coef},
        {"max_grad_norm", c.a2c.max_grad_norm},
        {"standardize_advantages", c.a2c.standardize_advantages}}},
      {"evolution",
       {{"enabled", c.evolution}, {"interval", c.evolution_interval}, {"eta", c.evolution_rate}}},
      {"network", [&] {
         json n = nn::ShapeToJson(c.network);
         n["seed"] = c.network_seed;
         return n;
       }()},
      {"training", {{"checkpoint_every", c.checkpoint_every}, {"output_dir", c.output_dir}}},
  };
}

RunConfig RunConfigFromJson(const json& j) {
  RunConfig c = RunConfig::Defaults();
  try {
    c.mode = ParseMode(j.value("mode", ModeName(c.mode)));
    c.seed = j.value("seed", c.seed);
    if (j.contains("stages")) {
      const std::vector<StageConfig> defaults = c.stages;
      c.stages.clear();
      for (std::size_t i = 0; i < j["stages"].size(); ++i) {
        const json& s = j["stages"][i];
        StageConfig stage = i < defaults.size() ? defaults[i] : StageConfig{};
        stage.name = s.value("name", stage.name.empty() ? "stage" + std::to_string(i + 1)
                                                        : stage.name);
        if (s.contains("map")) {
          json merged = ToJson(stage.map);
          merged.update(s["map"]);
          stage.map = MapConfigFromJson(merged);
        }
        if (s.contains("scenario")) {
          json merged = ToJson(stage.scenario);
          merged.update(s["scenario"]);
          stage.scenario = ScenarioConfigFromJson(merged);
        }
        stage.episodes = s.value("episodes", stage.episodes);
        c.stages.push_back(stage);
      }
    }
    if (j.contains("reward")) {
      const json& r = j["reward"];
      c.reward.move = r.value("move", c.reward.move);
      c.reward.wait = r.value("wait", c.reward.wait);
      c.reward.collision = r.value("collision", c.reward.collision);
      c.reward.oscillation = r.value("oscillation", c.reward.oscillation);
      c.reward.goal = r.value("goal", c.reward.goal);
      c.reward.lambda = r.value("lambda", c.reward.lambda);
    }
    if (j.contains("observation")) {
      const json& o = j["observation"];
      c.history = o.value("history", c.history);
      c.disable_trajectory_channel =
          o.value("disable_trajectory_channel", c.disable_trajectory_channel);
      c.disable_guidance = o.value("disable_guidance", c.disable_guidance);
    }
    if (j.contains("guidance")) {
      c.waypoint_interval = j["guidance"].value("waypoint_interval", c.waypoint_interval);
      c.reach_radius = j["guidance"].value("reach_radius", c.reach_radius);
    }
    if (j.contains("a2c")) {
      const json& a = j["a2c"];
      c.a2c.gamma = a.value("gamma", c.a2c.gamma);
      c.lr = a.value("lr", c.lr);
      c.a2c.loss.value_coef = a.value("value_coef", c.a2c.loss.value_coef);
      c.a2c.loss.entropy_coef = a.value("entropy_coef", c.a2c.loss.entropy_coef);
      c.a2c.max_grad_norm = a.value("max_grad_norm", c.a2c.max_grad_norm);
      c.a2c.standardize_advantages = a.value("standardize_advantages", c.a2c.standardize_advantages);
    }
    if (j.contains("evolution")) {
      const json& e = j["evolution"];
      c.evolution = e.value("enabled", c.evolution);
      c.evolution_interval = e.value("interval", c.evolution_interval);
      c.evolution_rate = e.value("eta", c.evolution_rate);
    }
    if (j.contains("network")) {
      json merged = nn::ShapeToJson(c.network);
      merged.update(j["network"]);
      c.network = nn::ShapeFromJson(merged);
      c.network_seed = j["network"].value("seed", c.network_seed);
    }
    if (j.contains("training")) {
      c.checkpoint_every = j["training"].value("checkpoint_every", c.checkpoint_every);
      c.output_dir = j["training"].value("output_dir", c.output_dir);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run config: ") + e.what());
  }
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string());
  try {
    return RunConfigFromJson(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
}

void ApplyOverride(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ParseError("override must look like key.path=value: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (node->is_array()) {
      const std::size_t idx = std::stoul(part);
      while (node->size() <= idx) node->push_back(json::object());
      node = &(*node)[idx];
    } else {
      node = &(*node)[part];
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = value;
}

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ (b * 0x9e3779b97f4a7c15ULL));
}

WorldFactory::WorldFactory(MapConfig map, ScenarioConfig scenario, std::uint64_t run_seed)
    : map_cfg_(std::move(map)), scenario_(scenario) {
  if (!map_cfg_.file.empty()) {
    fixed_map_ = std::make_shared<const GridMap>(ReadMapFile(map_cfg_.file));
  } else if (!map_cfg_.regenerate) {
    fixed_map_ = std::make_shared<const GridMap>(GenerateRandomMap(
        map_cfg_.width, map_cfg_.height, map_cfg_.density, DeriveSeed(run_seed, 0x4d4150)));
  }
}

WorldState WorldFactory::Make(std::uint64_t episode_seed) const {
  const ScenarioParams params = scenario_.ToParams();
  constexpr int kAttempts = 20;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const std::uint64_t seed = DeriveSeed(episode_seed, 0x5343454e, attempt);
    std::shared_ptr<const GridMap> map = fixed_map_;
    if (!map) {
      map = std::make_shared<const GridMap>(GenerateRandomMap(
          map_cfg_.width, map_cfg_.height, map_cfg_.density, DeriveSeed(seed, 0x4d4150)));
    }
    try {
      return SpawnScenario(map, params, seed);
    } catch (const ScenarioError&) {
      if (fixed_map_ && attempt + 1 >= 3) throw;
    }
  }
  throw ScenarioError("no feasible scenario after repeated map draws");
}

}  // namespace mapper
