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

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mapper/network.hpp"
#include "mapper/optimizer.hpp"

namespace mapper::rl {

// R_i / (R_max - R_min), without min-subtraction. Empty when fewer than two
// agents are given or the spread is zero; evolution is then skipped.
std::optional<std::vector<double>> NormalizeAccumulated(std::span<const double> accumulated);

// Index of the largest entry, lowest index on ties.
int ArgMax(std::span<const double> values);

// p_i = 1 - exp(eta * (Rbar_i - Rbar_j)) for the argmax agent j.
std::vector<double> ReplacementProbabilities(std::span<const double> normalized, double eta);

struct EvolutionRound {
  int best = 0;
  std::vector<double> probabilities;
  std::vector<int> replaced;
};

// Draws m ~ U[0, 1) for every agent in index order; agent i takes a copy of
// the best agent's weights (and fresh optimizer moments) iff m < p_i.
EvolutionRound EvolutionSelect(std::vector<nn::ParamSet>& params,
                               std::vector<nn::OptimizerState>& optimizers,
                               std::span<const double> normalized, double eta,
                               std::mt19937_64& rng);

}  // namespace mapper::rl
