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

#include "mapper/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mapper::nn {

GradCheckResult GradCheck(const GradCheckOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  ParamSet params = InitParams(opts.shape, opts.seed);
  for (int b = kConv1B; b < kNumBlocks; b += 2) {
    for (double& v : params.block(static_cast<Block>(b))) v = 0.1 * sym(rng);
  }

  GradCheckResult result;
  for (int k = 0; k < opts.inputs; ++k) {
    ObservationTensor obs;
    for (float& v : obs.values) v = static_cast<float>(unit(rng));
    const WaypointFeature wp{sym(rng), sym(rng)};
    const Action action = static_cast<Action>(rng() % kNumActions);
    const double adv = sym(rng);
    const double ret = 2.0 * sym(rng);
    const std::span<const ObservationTensor> o(&obs, 1);
    const std::span<const WaypointFeature> w(&wp, 1);
    const std::span<const Action> a(&action, 1);
    const std::span<const double> ad(&adv, 1);
    const std::span<const double> r(&ret, 1);

    const LossResult analytic = LossAndGrads(params, o, w, a, ad, r);
    std::span<double> theta = params.values();
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double saved = theta[i];
      theta[i] = saved + opts.epsilon;
      const double up = Loss(params, o, w, a, ad, r);
      theta[i] = saved - opts.epsilon;
      const double down = Loss(params, o, w, a, ad, r);
      theta[i] = saved;
      const double numeric = (up - down) / (2.0 * opts.epsilon);
      const double exact = analytic.grads.values()[i];
      const double rel = std::abs(exact - numeric) /
                         std::max({std::abs(exact), std::abs(numeric), opts.floor});
      ++result.checks;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst_index = i;
        result.worst_analytic = exact;
        result.worst_numeric = numeric;
        for (const ParamBlock& blk : params.blocks()) {
          if (i >= blk.offset && i < blk.offset + blk.size) result.worst_block = blk.name;
        }
      }
    }
  }
  return result;
}

}  // namespace mapper::nn
