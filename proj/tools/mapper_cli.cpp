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

// Command-line front end: train, evaluate, render, gen-maps, gradcheck.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mapper/checkpoint.hpp"
#include "mapper/config.hpp"
#include "mapper/errors.hpp"
#include "mapper/evaluate.hpp"
#include "mapper/gradcheck.hpp"
#include "mapper/trace.hpp"
#include "mapper/trainer.hpp"

namespace fs = std::filesystem;
using namespace mapper;

namespace {

nlohmann::json ConfigDocument(const std::string& path, const std::vector<std::string>& sets) {
  nlohmann::json doc = path.empty() ? ToJson(RunConfig::Defaults()) : ToJson(LoadRunConfig(path));
  for (const std::string& s : sets) ApplyOverride(doc, s);
  return doc;
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

struct TrainArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string output;
  std::string resume;
  bool quiet = false;
};

int RunTrain(const TrainArgs& a) {
  RunConfig cfg = RunConfigFromJson(ConfigDocument(a.config, a.sets));
  if (!a.output.empty()) cfg.output_dir = a.output;
  cfg.Validate();
  fs::create_directories(cfg.output_dir);
  WriteText(fs::path(cfg.output_dir) / "config.json", ToJson(cfg).dump(2) + "\n");
  CurriculumOptions opts;
  opts.output_dir = cfg.output_dir;
  opts.resume = a.resume;
  opts.progress = a.quiet ? nullptr : &std::cerr;
  for (const fs::path& p : TrainCurriculum(cfg, opts)) std::cout << p.string() << '\n';
  return 0;
}

struct EvalArgs {
  std::string checkpoint;
  std::string mode = "mapper";
  std::string config;
  std::vector<std::string> sets;
  std::string map;
  int width = 20, height = 20;
  double density = 0.2;
  int agents = 4, obstacles = 10;
  double goal_range = -1.0, min_goal_distance = 0.0;
  int horizon = 0;
  int episodes = 100;
  std::uint64_t seed = 1;
  std::string report, csv, record;
  int record_limit = -1;
};

int RunEvaluate(const EvalArgs& a) {
  EvalOptions opts;
  opts.mode = ParseMode(a.mode);
  RunConfig cfg = RunConfig::Defaults();
  if (!a.checkpoint.empty()) {
    const nn::Checkpoint ckpt = nn::ReadCheckpoint(a.checkpoint);
    if (ckpt.meta.contains("config")) cfg = RunConfigFromJson(ckpt.meta["config"]);
    opts.policy = BestPolicy(ckpt);
  } else if (opts.mode == Mode::kMapper) {
    throw ContractViolation("mapper evaluation needs --checkpoint");
  }
  if (!a.config.empty() || !a.sets.empty()) {
    nlohmann::json doc = a.config.empty() ? ToJson(cfg) : ToJson(LoadRunConfig(a.config));
    for (const std::string& s : a.sets) ApplyOverride(doc, s);
    cfg = RunConfigFromJson(doc);
  }
  cfg.Validate();
  EvalSuite suite;
  suite.name = a.map.empty() ? std::to_string(a.width) + "x" + std::to_string(a.height) : a.map;
  suite.map = MapConfig{a.map, a.width, a.height, a.density, true};
  suite.scenario = ScenarioConfig{a.agents, a.obstacles, a.goal_range, a.min_goal_distance, a.horizon};
  suite.episodes = a.episodes;
  suite.seed = a.seed;
  StageConfig stage;
  stage.scenario = suite.scenario;
  opts.sim = cfg.Simulation(stage);
  opts.record_dir = a.record;
  opts.record_limit = a.record_limit;

  const EvalReport report = Evaluate(suite, opts);
  const std::string json = report.ToJson().dump(2) + "\n";
  if (!a.report.empty()) WriteText(a.report, json);
  if (!a.csv.empty()) WriteText(a.csv, report.ToCsv());
  std::printf("%s %s: success %.4f (sd %.4f) all-agents %.4f mean steps %.2f collisions %lld\n",
              report.mode.c_str(), report.suite.c_str(), report.success_rate,
              report.success_rate_std, report.all_success_rate, report.mean_steps,
              static_cast<long long>(report.collisions));
  return 0;
}

struct RenderArgs {
  std::string trace;
  std::string out;
  std::string format = "ascii";
  int scale = 8;
};

int RunRender(const RenderArgs& a) {
  const Trace t = ReadTrace(a.trace);
  if (a.format != "ascii" && a.format != "ppm") throw ParseError("format must be ascii or ppm");
  if (!a.out.empty()) fs::create_directories(a.out);
  for (std::size_t f = 0; f < t.frames.size(); ++f) {
    if (a.format == "ascii") {
      const std::string frame = RenderAscii(t, f);
      if (a.out.empty()) {
        std::cout << "frame " << f << '\n' << frame << '\n';
      } else {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05zu.txt", f);
        WriteText(fs::path(a.out) / name, frame);
      }
    } else {
      if (a.out.empty()) throw ParseError("ppm rendering needs --out");
      char name[32];
      std::snprintf(name, sizeof(name), "frame_%05zu.ppm", f);
      WriteText(fs::path(a.out) / name, RenderPpm(t, f, a.scale));
    }
  }
  std::cerr << t.frames.size() << " frames\n";
  return 0;
}

struct GenArgs {
  int count = 10, width = 20, height = 20;
  double density = 0.2;
  std::uint64_t seed = 1;
  std::string out = "maps";
  int agents = 0, obstacles = 0;
  double goal_range = -1.0;
};

int RunGenMaps(const GenArgs& a) {
  fs::create_directories(a.out);
  for (int k = 0; k < a.count; ++k) {
    const std::uint64_t seed = DeriveSeed(a.seed, k);
    const GridMap map = GenerateRandomMap(a.width, a.height, a.density, seed);
    char name[32];
    std::snprintf(name, sizeof(name), "map_%04d", k);
    WriteMapFile(map, fs::path(a.out) / (std::string(name) + ".map"));
    if (a.agents > 0 || a.obstacles > 0) {
      ScenarioConfig sc{a.agents, a.obstacles, a.goal_range, 0.0, 0};
      const WorldState w =
          SpawnScenario(std::make_shared<const GridMap>(map), sc.ToParams(), seed);
      WriteScenarioFile(w, seed, fs::path(a.out) / (std::string(name) + ".scenario.json"));
    }
  }
  std::cout << a.count << " maps written to " << a.out << '\n';
  return 0;
}

int RunGradCheck(const nn::GradCheckOptions& o, double tolerance) {
  const nn::GradCheckResult r = nn::GradCheck(o);
  std::printf("checked %zu partials, max relative error %.3e at %s[%zu] (analytic %.9e numeric %.9e)\n",
              r.checks, r.max_rel_error, r.worst_block.c_str(), r.worst_index, r.worst_analytic,
              r.worst_numeric);
  return r.max_rel_error < tolerance ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MAPPER multi-agent path-planning lab"};
  app.require_subcommand(1);

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "Run curriculum training");
  train->add_option("-c,--config", ta.config, "Run config (JSON)")->check(CLI::ExistingFile);
  train->add_option("-s,--set", ta.sets, "Override, e.g. a2c.lr=0.001 or stages.0.episodes=500");
  train->add_option("-o,--output", ta.output, "Output directory");
  train->add_option("--resume", ta.resume, "Resume from a checkpoint")->check(CLI::ExistingFile);
  train->add_flag("-q,--quiet", ta.quiet, "No progress output");

  EvalArgs ea;
  auto* eval = app.add_subcommand("evaluate", "Evaluate a checkpoint or LRA*");
  eval->add_option("--checkpoint", ea.checkpoint)->check(CLI::ExistingFile);
  eval->add_option("--mode", ea.mode, "mapper or lra_star");
  eval->add_option("-c,--config", ea.config, "Run config for simulation settings");
  eval->add_option("-s,--set", ea.sets, "Config override");
  eval->add_option("--map", ea.map, "Map file (random maps otherwise)");
  eval->add_option("--width", ea.width);
  eval->add_option("--height", ea.height);
  eval->add_option("--density", ea.density);
  eval->add_option("--agents", ea.agents);
  eval->add_option("--obstacles", ea.obstacles);
  eval->add_option("--goal-range", ea.goal_range, "Negative for unlimited");
  eval->add_option("--min-goal-distance", ea.min_goal_distance);
  eval->add_option("--horizon", ea.horizon, "0 for the map default");
  eval->add_option("-e,--episodes", ea.episodes);
  eval->add_option("--seed", ea.seed);
  eval->add_option("--report", ea.report, "JSON report path");
  eval->add_option("--csv", ea.csv, "Per-agent CSV path");
  eval->add_option("--record", ea.record, "Directory for episode traces");
  eval->add_option("--record-limit", ea.record_limit, "Episodes to record");

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "Render a recorded trace");
  render->add_option("trace", ra.trace)->required()->check(CLI::ExistingFile);
  render->add_option("-o,--out", ra.out, "Frame directory (stdout for ascii if omitted)");
  render->add_option("-f,--format", ra.format, "ascii or ppm");
  render->add_option("--scale", ra.scale, "Pixels per cell");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen-maps", "Generate random maps");
  gen->add_option("-n,--count", ga.count);
  gen->add_option("--width", ga.width);
  gen->add_option("--height", ga.height);
  gen->add_option("--density", ga.density);
  gen->add_option("--seed", ga.seed);
  gen->add_option("-o,--out", ga.out);
  gen->add_option("--agents", ga.agents, "Also write a scenario with this many agents");
  gen->add_option("--obstacles", ga.obstacles);
  gen->add_option("--goal-range", ga.goal_range);

  nn::GradCheckOptions go;
  double tolerance = 1e-4;
  auto* grad = app.add_subcommand("gradcheck", "Finite-difference gradient check");
  grad->add_option("--inputs", go.inputs);
  grad->add_option("--epsilon", go.epsilon);
  grad->add_option("--seed", go.seed);
  grad->add_option("--tolerance", tolerance);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*train) return RunTrain(ta);
    if (*eval) return RunEvaluate(ea);
    if (*render) return RunRender(ra);
    if (*gen) return RunGenMaps(ga);
    if (*grad) return RunGradCheck(go, tolerance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
