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
#include <functional>
#include <ostream>
#include <vector>

#include "mapper/a2c.hpp"
#include "mapper/checkpoint.hpp"
#include "mapper/config.hpp"
#include "mapper/evolution.hpp"

namespace mapper {

struct EpisodeSummary {
  std::int64_t episode = 0;
  std::vector<double> returns;
  std::vector<std::uint8_t> success;
  int steps = 0;
  int collisions = 0;
};

// Population training for one curriculum stage: one A2C update per agent per
// episode, evolutionary selection every `evolution_interval` episodes.
//
// Every episode draws its world and its action-sampling generator from seeds
// derived from (run seed, stage, episode), and every evolution round from
// (run seed, stage, round), so a resumed run replays the original exactly.
class Trainer {
 public:
  // `init` seeds the population; agent i takes init[i % init.size()]. When
  // empty, each agent gets its own random initialization.
  Trainer(RunConfig cfg, int stage, std::vector<nn::ParamSet> init = {});

  // Rebuilds a trainer from a checkpoint written by Save().
  static Trainer FromCheckpoint(const nn::Checkpoint& ckpt);

  void set_episode_log(std::ostream* out) { episode_log_ = out; }
  void set_evolution_log(std::ostream* out) { evolution_log_ = out; }

  EpisodeSummary TrainEpisode();
  // Trains until the stage's episode budget (or `limit` more episodes) is
  // spent. `on_episode` runs after each episode.
  void Run(std::int64_t limit = -1,
           const std::function<void(const Trainer&, const EpisodeSummary&)>& on_episode = {});

  nn::Checkpoint Save() const;

  const RunConfig& config() const { return cfg_; }
  const StageConfig& stage() const { return cfg_.stages[stage_]; }
  int stage_index() const { return stage_; }
  std::int64_t episode() const { return episode_; }
  std::int64_t rounds() const { return round_; }
  int interval_counter() const { return counter_; }
  bool Done() const { return episode_ >= stage().episodes; }
  const std::vector<nn::ParamSet>& params() const { return params_; }
  const std::vector<nn::OptimizerState>& optimizers() const { return optimizers_; }
  const std::vector<double>& accumulated() const { return accumulated_; }
  // Argmax of the accumulated reward at the last completed interval.
  int best_agent() const { return best_agent_; }

  static void WriteEpisodeHeader(std::ostream& out);
  static void WriteEvolutionHeader(std::ostream& out);

 private:
  void FinishInterval();

  RunConfig cfg_;
  int stage_;
  WorldFactory factory_;
  SimulationConfig sim_cfg_;
  std::vector<nn::ParamSet> params_;
  std::vector<nn::OptimizerState> optimizers_;
  std::vector<double> accumulated_;
  std::int64_t episode_ = 0;
  std::int64_t round_ = 0;
  int counter_ = 0;
  int best_agent_ = 0;
  std::ostream* episode_log_ = nullptr;
  std::ostream* evolution_log_ = nullptr;
};

// Parameters of the best agent stored in a population checkpoint.
nn::ParamSet BestPolicy(const nn::Checkpoint& ckpt);

struct CurriculumOptions {
  std::filesystem::path output_dir;
  // Resume the stage recorded in this checkpoint.
  std::filesystem::path resume;
  std::ostream* progress = nullptr;
};

// Runs every stage in order, warm-starting each from the previous stage's
// population. Writes per-stage logs and checkpoints to the output directory
// and returns the final checkpoint path of every stage.
std::vector<std::filesystem::path> TrainCurriculum(const RunConfig& cfg,
                                                   const CurriculumOptions& opts);

}  // namespace mapper
