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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mapper/observation.hpp"

namespace mapper::nn {

// Layer widths. The input is always the 3x15x15 observation plus the 2-d
// waypoint feature; everything else can be shrunk for gradient checks.
struct NetworkShape {
  int conv1 = 32;
  int conv2 = 64;
  int waypoint_hidden = 64;
  int trunk1 = 256;
  int trunk2 = 128;
  int head_hidden = 64;
  // Fixed multiplier on the value output.
  double value_scale = 1.0;
  // Fixed multiplier on the waypoint feature before the waypoint branch.
  double waypoint_gain = 1.0;
  // Compute in float; parameters and gradients stay double.
  bool single_precision = false;

  static constexpr int kInChannels = kObsChannels;
  static constexpr int kInSize = kWindow;
  static constexpr int kPool1 = kInSize / 2;  // 7
  static constexpr int kPool2 = kPool1 / 2;   // 3
  static constexpr int kActions = kNumActions;

  int flat() const { return conv2 * kPool2 * kPool2; }
  int concat() const { return flat() + waypoint_hidden; }

  bool operator==(const NetworkShape&) const = default;
};

struct Tensor {
  std::vector<int> shape;
  std::vector<double> values;
};

enum Block : int {
  kConv1W, kConv1B, kConv2W, kConv2B,
  kWaypointW, kWaypointB,
  kTrunk1W, kTrunk1B, kTrunk2W, kTrunk2B,
  kPolicy1W, kPolicy1B, kPolicy2W, kPolicy2B,
  kValue1W, kValue1B, kValue2W, kValue2B,
  kNumBlocks
};

struct ParamBlock {
  std::string name;
  std::vector<int> shape;
  std::size_t offset = 0;
  std::size_t size = 0;
};

// Every weight and bias of one policy/value network, stored contiguously in
// block order. Weight matrices are row-major [out, in]; convolution kernels
// are [out, in, 3, 3].
class ParamSet {
 public:
  ParamSet() = default;
  // All-zero parameters.
  explicit ParamSet(const NetworkShape& shape);

  const NetworkShape& shape() const { return shape_; }
  const std::vector<ParamBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return data_.size(); }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<double> block(Block b) {
    return std::span<double>(data_).subspan(blocks_[b].offset, blocks_[b].size);
  }
  std::span<const double> block(Block b) const {
    return std::span<const double>(data_).subspan(blocks_[b].offset, blocks_[b].size);
  }
  Tensor tensor(Block b) const;

  bool AllFinite() const;
  void SetZero();

  bool operator==(const ParamSet& o) const { return shape_ == o.shape_ && data_ == o.data_; }

 private:
  NetworkShape shape_;
  std::vector<ParamBlock> blocks_;
  // Fixed alignment keeps vectorized reductions in the same order for every
  // copy, so results do not depend on where a ParamSet was allocated.
  std::vector<double, Eigen::aligned_allocator<double>> data_;
};

using GradientSet = ParamSet;

// Weights ~ U(-b, b) with b = gain * sqrt(3 / fan_in) (gain sqrt(2) on ReLU
// layers, 0.01 on the policy logits, 1 on the value output); biases zero.
ParamSet InitParams(const NetworkShape& shape, std::uint64_t seed);

struct NetworkOutput {
  std::array<double, kNumActions> action_probs{};
  std::array<double, kNumActions> log_probs{};
  double value = 0.0;
};

NetworkOutput Forward(const ParamSet& params, const ObservationTensor& obs,
                      const WaypointFeature& wp);

// Several inputs through the same parameters.
std::vector<NetworkOutput> ForwardBatch(const ParamSet& params,
                                        std::span<const ObservationTensor> obs,
                                        std::span<const WaypointFeature> wp);

struct LossConfig {
  double value_coef = 0.5;
  double entropy_coef = 0.01;
};

struct LossResult {
  double loss = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  GradientSet grads;
};

// loss = -mean[log pi(a|o) * adv] + value_coef * mean[(V(o) - ret)^2]
//        - entropy_coef * mean[H(pi(.|o))]
// with advantages held constant. Gradients are exact.
LossResult LossAndGrads(const ParamSet& params, std::span<const ObservationTensor> obs,
                        std::span<const WaypointFeature> wp, std::span<const Action> actions,
                        std::span<const double> advantages, std::span<const double> returns,
                        const LossConfig& cfg = {});

// Same loss without gradients, for finite differences.
double Loss(const ParamSet& params, std::span<const ObservationTensor> obs,
            std::span<const WaypointFeature> wp, std::span<const Action> actions,
            std::span<const double> advantages, std::span<const double> returns,
            const LossConfig& cfg = {});

}  // namespace mapper::nn
