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
#include <vector>

#include "mapper/network.hpp"

namespace mapper::nn {

// Adam moments for one ParamSet.
struct OptimizerState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static OptimizerState For(const ParamSet& params, double lr = 3e-4);
  // Zeroes the moments and step counter, keeping the hyperparameters.
  void Reset();

  bool operator==(const OptimizerState&) const = default;
};

// One bias-corrected Adam update of `params` in place.
void OptimizerStep(ParamSet& params, const GradientSet& grads, OptimizerState& opt);

// Scales `grads` so that their global L2 norm is at most `max_norm`; returns
// the norm before clipping.
double ClipGradNorm(GradientSet& grads, double max_norm);

}  // namespace mapper::nn
