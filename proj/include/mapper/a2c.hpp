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
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "mapper/network.hpp"
#include "mapper/optimizer.hpp"
#include "mapper/simulation.hpp"

namespace mapper::rl {

// One agent's trajectory over one episode (or its truncation).
struct RolloutBuffer {
  std::vector<ObservationTensor> obs;
  std::vector<WaypointFeature> waypoints;
  std::vector<Action> actions;
  std::vector<double> rewards;
  std::vector<double> log_probs;
  std::vector<double> values;
  std::vector<std::uint8_t> terminal;
  // V of the observation after the last step; used only when truncated.
  double bootstrap_value = 0.0;
  bool truncated = false;

  std::size_t size() const { return actions.size(); }
  bool empty() const { return actions.empty(); }
  // Throws ContractViolation when the per-step lists differ in length.
  void Validate() const;
};

struct ReturnsAdvantages {
  std::vector<double> returns;
  std::vector<double> advantages;
};

// G_t = r_t + gamma * G_{t+1}, seeded with 0 at a terminal step and with the
// bootstrap value at truncation; A_t = G_t - V(o_t).
ReturnsAdvantages ComputeReturnsAndAdvantages(const RolloutBuffer& buffer, double gamma = 0.99);

struct A2CConfig {
  double gamma = 0.99;
  nn::LossConfig loss;
  double max_grad_norm = 0.5;
  bool standardize_advantages = true;
};

struct UpdateStats {
  double loss = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double grad_norm = 0.0;
};

// Zero-mean unit-variance copy; all zeros when the spread vanishes.
std::vector<double> Standardize(std::span<const double> values);

// One gradient step on the agent's own buffer.
UpdateStats A2CUpdate(nn::ParamSet& params, nn::OptimizerState& opt, const RolloutBuffer& buffer,
                      const ReturnsAdvantages& ra, const A2CConfig& cfg);

enum class ActionSelection { kSample, kGreedy };

// Samples from `probs` with one uniform draw.
Action SampleAction(std::span<const double> probs, std::mt19937_64& rng);
Action GreedyAction(std::span<const double> probs);

struct EpisodeResult {
  std::vector<RolloutBuffer> buffers;
  // Discounted return per agent.
  std::vector<double> returns;
  std::vector<std::uint8_t> success;
  // Step on which each agent reached its goal, -1 if it did not.
  std::vector<int> goal_step;
  int steps = 0;
  int collisions = 0;
};

// Runs `sim` to completion with agent i acting from *policies[i].
EpisodeResult RunEpisode(Simulation& sim, std::span<const nn::ParamSet* const> policies,
                         double gamma, std::mt19937_64& rng,
                         ActionSelection selection = ActionSelection::kSample,
                         bool record = true,
                         const std::function<void(const Simulation&)>& on_step = {});

}  // namespace mapper::rl
