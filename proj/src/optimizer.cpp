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

#include "mapper/optimizer.hpp"

#include <cmath>

#include "mapper/errors.hpp"

namespace mapper::nn {

OptimizerState OptimizerState::For(const ParamSet& params, double lr) {
  OptimizerState s;
  s.m.assign(params.size(), 0.0);
  s.v.assign(params.size(), 0.0);
  s.lr = lr;
  return s;
}

void OptimizerState::Reset() {
  std::fill(m.begin(), m.end(), 0.0);
  std::fill(v.begin(), v.end(), 0.0);
  step = 0;
}

void OptimizerStep(ParamSet& params, const GradientSet& grads, OptimizerState& opt) {
  if (grads.size() != params.size() || opt.m.size() != params.size() ||
      opt.v.size() != params.size()) {
    throw ContractViolation("optimizer shapes do not match the parameters");
  }
  ++opt.step;
  const double c1 = 1.0 - std::pow(opt.beta1, static_cast<double>(opt.step));
  const double c2 = 1.0 - std::pow(opt.beta2, static_cast<double>(opt.step));
  auto p = params.values();
  auto g = grads.values();
  for (std::size_t i = 0; i < p.size(); ++i) {
    opt.m[i] = opt.beta1 * opt.m[i] + (1.0 - opt.beta1) * g[i];
    opt.v[i] = opt.beta2 * opt.v[i] + (1.0 - opt.beta2) * g[i] * g[i];
    const double m_hat = opt.m[i] / c1;
    const double v_hat = opt.v[i] / c2;
    p[i] -= opt.lr * m_hat / (std::sqrt(v_hat) + opt.eps);
  }
}

double ClipGradNorm(GradientSet& grads, double max_norm) {
  double sq = 0.0;
  for (double g : grads.values()) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (double& g : grads.values()) g *= scale;
  }
  return norm;
}

}  // namespace mapper::nn
