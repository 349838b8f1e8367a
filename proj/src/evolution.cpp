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

#include "mapper/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "mapper/errors.hpp"

namespace mapper::rl {

std::optional<std::vector<double>> NormalizeAccumulated(std::span<const double> accumulated) {
  if (accumulated.size() < 2) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(accumulated.begin(), accumulated.end());
  const double spread = *hi - *lo;
  if (!(spread > 0.0)) return std::nullopt;
  std::vector<double> out(accumulated.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = accumulated[i] / spread;
  return out;
}

int ArgMax(std::span<const double> values) {
  if (values.empty()) throw ContractViolation("argmax of an empty list");
  return static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
}

std::vector<double> ReplacementProbabilities(std::span<const double> normalized, double eta) {
  const int j = ArgMax(normalized);
  std::vector<double> p(normalized.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = static_cast<int>(i) == j ? 0.0 : 1.0 - std::exp(eta * (normalized[i] - normalized[j]));
  }
  return p;
}

EvolutionRound EvolutionSelect(std::vector<nn::ParamSet>& params,
                               std::vector<nn::OptimizerState>& optimizers,
                               std::span<const double> normalized, double eta,
                               std::mt19937_64& rng) {
  if (params.size() != normalized.size() || optimizers.size() != params.size()) {
    throw ContractViolation("evolution needs one reward and optimizer per agent");
  }
  EvolutionRound round;
  round.best = ArgMax(normalized);
  round.probabilities = ReplacementProbabilities(normalized, eta);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double m = unit(rng);
    if (m < round.probabilities[i]) {
      params[i] = params[round.best];
      optimizers[i].Reset();
      round.replaced.push_back(static_cast<int>(i));
    }
  }
  return round;
}

}  // namespace mapper::rl
