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

#include "mapper/trainer.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mapper/errors.hpp"

namespace mapper {

namespace {

constexpr std::uint64_t kActionStream = 0x414354;
constexpr std::uint64_t kEvolutionStream = 0x45564f;

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::uint64_t StageSeed(const RunConfig& cfg, int stage) { return DeriveSeed(cfg.seed, stage + 1); }

}  // namespace

Trainer::Trainer(RunConfig cfg, int stage, std::vector<nn::ParamSet> init)
    : cfg_(std::move(cfg)),
      stage_(stage),
      factory_((cfg_.Validate(), cfg_.stages.at(stage).map), cfg_.stages.at(stage).scenario,
               StageSeed(cfg_, stage)),
      sim_cfg_(cfg_.Simulation(cfg_.stages.at(stage))) {
  const int n = cfg_.stages[stage].scenario.agents;
  for (int i = 0; i < n; ++i) {
    if (init.empty()) {
      params_.push_back(nn::InitParams(cfg_.network, DeriveSeed(cfg_.network_seed, i)));
    } else {
      params_.push_back(init[i % init.size()]);
      if (!(params_.back().shape() == cfg_.network)) {
        throw ContractViolation("warm-start network shape differs from the configured one");
      }
    }
    optimizers_.push_back(nn::OptimizerState::For(params_.back(), cfg_.lr));
  }
  accumulated_.assign(n, 0.0);
}

void Trainer::WriteEpisodeHeader(std::ostream& out) {
  out << "stage,episode,agent,return,success,steps\n";
}

void Trainer::WriteEvolutionHeader(std::ostream& out) {
  out << "stage,round,episode,best,normalized,replaced\n";
}

EpisodeSummary Trainer::TrainEpisode() {
  const std::uint64_t base = StageSeed(cfg_, stage_);
  Simulation sim(factory_.Make(DeriveSeed(base, episode_)), sim_cfg_);
  std::mt19937_64 rng(DeriveSeed(base, kActionStream, episode_));
  std::vector<const nn::ParamSet*> policies;
  for (const nn::ParamSet& p : params_) policies.push_back(&p);
  rl::EpisodeResult result = rl::RunEpisode(sim, policies, cfg_.a2c.gamma, rng);

  for (std::size_t i = 0; i < params_.size(); ++i) {
    const rl::RolloutBuffer& buf = result.buffers[i];
    if (buf.empty()) continue;
    const rl::ReturnsAdvantages ra = rl::ComputeReturnsAndAdvantages(buf, cfg_.a2c.gamma);
    rl::A2CUpdate(params_[i], optimizers_[i], buf, ra, cfg_.a2c);
  }

  EpisodeSummary summary;
  summary.episode = episode_;
  summary.returns = result.returns;
  summary.success = result.success;
  summary.steps = result.steps;
  summary.collisions = result.collisions;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    accumulated_[i] += result.returns[i];
    if (episode_log_) {
      *episode_log_ << stage().name << ',' << episode_ << ',' << i << ','
                    << Fmt(result.returns[i]) << ',' << int(result.success[i]) << ','
                    << result.steps << '\n';
    }
  }
  ++episode_;
  if (++counter_ == cfg_.evolution_interval) FinishInterval();
  return summary;
}

void Trainer::FinishInterval() {
  best_agent_ = rl::ArgMax(accumulated_);
  const auto normalized = rl::NormalizeAccumulated(accumulated_);
  std::string norm_text = "skipped";
  std::string replaced_text;
  if (normalized) {
    norm_text.clear();
    for (std::size_t i = 0; i < normalized->size(); ++i) {
      if (i) norm_text += ';';
      norm_text += Fmt((*normalized)[i]);
    }
    if (cfg_.evolution) {
      std::mt19937_64 rng(DeriveSeed(StageSeed(cfg_, stage_), kEvolutionStream, round_));
      const rl::EvolutionRound r =
          rl::EvolutionSelect(params_, optimizers_, *normalized, cfg_.evolution_rate, rng);
      for (std::size_t k = 0; k < r.replaced.size(); ++k) {
        if (k) replaced_text += ';';
        replaced_text += std::to_string(r.replaced[k]);
      }
    }
  }
  if (evolution_log_) {
    *evolution_log_ << stage().name << ',' << round_ << ',' << episode_ << ',' << best_agent_
                    << ',' << norm_text << ',' << replaced_text << '\n';
  }
  std::fill(accumulated_.begin(), accumulated_.end(), 0.0);
  counter_ = 0;
  ++round_;
}

void Trainer::Run(std::int64_t limit,
                  const std::function<void(const Trainer&, const EpisodeSummary&)>& on_episode) {
  std::int64_t ran = 0;
  while (!Done() && (limit < 0 || ran < limit)) {
    const EpisodeSummary s = TrainEpisode();
    ++ran;
    if (on_episode) on_episode(*this, s);
  }
}

nn::Checkpoint Trainer::Save() const {
  nn::Checkpoint ckpt;
  ckpt.meta = {{"kind", "mapper-population"},
               {"config", ToJson(cfg_)},
               {"stage", stage_},
               {"episode", episode_},
               {"round", round_},
               {"counter", counter_},
               {"accumulated", accumulated_},
               {"best_agent", best_agent_}};
  ckpt.params = params_;
  ckpt.optimizers = optimizers_;
  return ckpt;
}

Trainer Trainer::FromCheckpoint(const nn::Checkpoint& ckpt) {
  try {
    const auto& m = ckpt.meta;
    if (m.value("kind", std::string()) != "mapper-population") {
      throw CheckpointError("checkpoint does not hold a training population");
    }
    Trainer t(RunConfigFromJson(m.at("config")), m.at("stage").get<int>(), ckpt.params);
    if (ckpt.params.size() != t.params_.size() || ckpt.optimizers.size() != t.params_.size()) {
      throw CheckpointError("checkpoint population size does not match its config");
    }
    t.params_ = ckpt.params;
    t.optimizers_ = ckpt.optimizers;
    t.episode_ = m.at("episode").get<std::int64_t>();
    t.round_ = m.at("round").get<std::int64_t>();
    t.counter_ = m.at("counter").get<int>();
    t.accumulated_ = m.at("accumulated").get<std::vector<double>>();
    t.best_agent_ = m.at("best_agent").get<int>();
    if (t.accumulated_.size() != t.params_.size()) {
      throw CheckpointError("checkpoint accumulator count does not match its population");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("checkpoint metadata incomplete: ") + e.what());
  }
}

nn::ParamSet BestPolicy(const nn::Checkpoint& ckpt) {
  if (ckpt.params.empty()) throw CheckpointError("checkpoint holds no networks");
  const int best = ckpt.meta.value("best_agent", 0);
  if (best < 0 || best >= static_cast<int>(ckpt.params.size())) {
    throw CheckpointError("checkpoint best agent out of range");
  }
  return ckpt.params[best];
}

std::vector<std::filesystem::path> TrainCurriculum(const RunConfig& cfg,
                                                   const CurriculumOptions& opts) {
  cfg.Validate();
  namespace fs = std::filesystem;
  fs::create_directories(opts.output_dir);
  std::vector<fs::path> finals;

  int first_stage = 0;
  std::optional<Trainer> resumed;
  if (!opts.resume.empty()) {
    resumed.emplace(Trainer::FromCheckpoint(nn::ReadCheckpoint(opts.resume)));
    first_stage = resumed->stage_index();
  }

  std::vector<nn::ParamSet> carry;
  for (int s = first_stage; s < static_cast<int>(cfg.stages.size()); ++s) {
    Trainer trainer = (resumed && s == first_stage) ? std::move(*resumed) : Trainer(cfg, s, carry);
    const std::string name = trainer.stage().name;
    const bool fresh = trainer.episode() == 0;
    const auto mode = fresh ? std::ios::trunc : std::ios::app;
    std::ofstream episodes(opts.output_dir / (name + "_episodes.csv"), std::ios::out | mode);
    std::ofstream evolution(opts.output_dir / (name + "_evolution.csv"), std::ios::out | mode);
    if (!episodes || !evolution) throw CheckpointError("cannot open training logs in " +
                                                       opts.output_dir.string());
    if (fresh) {
      Trainer::WriteEpisodeHeader(episodes);
      Trainer::WriteEvolutionHeader(evolution);
    }
    trainer.set_episode_log(&episodes);
    trainer.set_evolution_log(&evolution);

    std::int64_t window = 0, window_success = 0, window_agents = 0;
    trainer.Run(-1, [&](const Trainer& t, const EpisodeSummary& summary) {
      for (auto ok : summary.success) window_success += ok;
      window_agents += static_cast<std::int64_t>(summary.success.size());
      ++window;
      if (t.config().checkpoint_every > 0 && t.episode() % t.config().checkpoint_every == 0) {
        episodes.flush();
        evolution.flush();
        nn::WriteCheckpoint(t.Save(), opts.output_dir / (name + "_latest.ckpt"));
      }
      if (opts.progress && window == 100) {
        *opts.progress << name << " episode " << t.episode() << " success "
                       << Fmt(window_agents ? double(window_success) / window_agents : 0.0)
                       << '\n';
        window = window_success = window_agents = 0;
      }
    });
    episodes.flush();
    evolution.flush();
    const fs::path final_path = opts.output_dir / (name + "_final.ckpt");
    nn::WriteCheckpoint(trainer.Save(), final_path);
    finals.push_back(final_path);
    carry = trainer.params();
  }
  return finals;
}

}  // namespace mapper
