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
#include <string>

#include "mapper/network.hpp"

namespace mapper::nn {

struct GradCheckOptions {
  NetworkShape shape{8, 16, 16, 64, 32, 16};
  int inputs = 5;
  double epsilon = 1e-5;
  // Denominator floor of the relative error, so that near-zero gradients
  // are compared absolutely.
  double floor = 1e-6;
  std::uint64_t seed = 11;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_block;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t checks = 0;
};

// Central finite differences over every parameter of a randomly initialised
// network (with random biases), one single-sample loss per random input.
GradCheckResult GradCheck(const GradCheckOptions& opts);

}  // namespace mapper::nn
