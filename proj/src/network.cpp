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

#include "mapper/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <type_traits>

#include <Eigen/Dense>

#include "mapper/errors.hpp"

namespace mapper::nn {

namespace {

constexpr int kIn = NetworkShape::kInSize;
constexpr int kInArea = kIn * kIn;
constexpr int kP1 = NetworkShape::kPool1;
constexpr int kP1Area = kP1 * kP1;
constexpr int kP2 = NetworkShape::kPool2;
constexpr int kP2Area = kP2 * kP2;
constexpr int kA = NetworkShape::kActions;

std::vector<ParamBlock> MakeBlocks(const NetworkShape& s) {
  const int cin = NetworkShape::kInChannels;
  std::vector<ParamBlock> b(kNumBlocks);
  auto set = [&](Block id, const char* name, std::vector<int> shape) {
    b[id].name = name;
    b[id].shape = std::move(shape);
  };
  set(kConv1W, "conv1.weight", {s.conv1, cin, 3, 3});
  set(kConv1B, "conv1.bias", {s.conv1});
  set(kConv2W, "conv2.weight", {s.conv2, s.conv1, 3, 3});
  set(kConv2B, "conv2.bias", {s.conv2});
  set(kWaypointW, "waypoint.weight", {s.waypoint_hidden, 2});
  set(kWaypointB, "waypoint.bias", {s.waypoint_hidden});
  set(kTrunk1W, "trunk1.weight", {s.trunk1, s.concat()});
  set(kTrunk1B, "trunk1.bias", {s.trunk1});
  set(kTrunk2W, "trunk2.weight", {s.trunk2, s.trunk1});
  set(kTrunk2B, "trunk2.bias", {s.trunk2});
  set(kPolicy1W, "policy1.weight", {s.head_hidden, s.trunk2});
  set(kPolicy1B, "policy1.bias", {s.head_hidden});
  set(kPolicy2W, "policy2.weight", {kA, s.head_hidden});
  set(kPolicy2B, "policy2.bias", {kA});
  set(kValue1W, "value1.weight", {s.head_hidden, s.trunk2});
  set(kValue1B, "value1.bias", {s.head_hidden});
  set(kValue2W, "value2.weight", {1, s.head_hidden});
  set(kValue2B, "value2.bias", {1});
  std::size_t offset = 0;
  for (auto& blk : b) {
    blk.size = 1;
    for (int d : blk.shape) blk.size *= static_cast<std::size_t>(d);
    blk.offset = offset;
    offset += blk.size;
  }
  return b;
}

// Parameters viewed in scalar type S: the ParamSet itself for double, a
// converted copy for float.
template <typename S>
class Net {
 public:
  using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  using RowMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  explicit Net(const ParamSet& p) : params_(p) {
    if constexpr (std::is_same_v<S, double>) {
      data_ = p.values().data();
    } else {
      copy_.assign(p.values().begin(), p.values().end());
      data_ = copy_.data();
    }
  }

  const NetworkShape& shape() const { return params_.shape(); }
  const ParamSet& params() const { return params_; }

  Eigen::Map<const RowMatrix> W(Block b) const {
    const ParamBlock& blk = params_.blocks()[b];
    const int rows = blk.shape[0];
    return {data_ + blk.offset, rows, static_cast<Eigen::Index>(blk.size / rows)};
  }
  Eigen::Map<const Eigen::Matrix<S, Eigen::Dynamic, 1>> B(Block b) const {
    const ParamBlock& blk = params_.blocks()[b];
    return {data_ + blk.offset, static_cast<Eigen::Index>(blk.size)};
  }

 private:
  const ParamSet& params_;
  std::vector<S, Eigen::aligned_allocator<S>> copy_;
  const S* data_ = nullptr;
};

// Gradient buffer in scalar type S with the ParamSet block layout.
template <typename S>
class GradBuffer {
 public:
  using RowMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  explicit GradBuffer(const ParamSet& layout) : layout_(layout), data_(layout.size(), S(0)) {}

  Eigen::Map<RowMatrix> W(Block b) {
    const ParamBlock& blk = layout_.blocks()[b];
    const int rows = blk.shape[0];
    return {data_.data() + blk.offset, rows, static_cast<Eigen::Index>(blk.size / rows)};
  }
  Eigen::Map<Eigen::Matrix<S, Eigen::Dynamic, 1>> B(Block b) {
    const ParamBlock& blk = layout_.blocks()[b];
    return {data_.data() + blk.offset, static_cast<Eigen::Index>(blk.size)};
  }

  ParamSet ToParamSet() const {
    ParamSet g(layout_.shape());
    std::copy(data_.begin(), data_.end(), g.values().begin());
    return g;
  }

 private:
  const ParamSet& layout_;
  std::vector<S, Eigen::aligned_allocator<S>> data_;
};

template <typename M>
void CheckFinite(const M& m, const char* layer) {
  if (!m.allFinite()) throw NumericError(layer, "non-finite activation");
}

// 3x3, stride 1, zero padding 1. `src` holds `channels` rows of size*size
// columns per sample; the result has channels*9 rows and size*size columns
// per sample.
template <typename M>
void Im2Col(const M& src, int channels, int size, int samples, M& cols) {
  const int area = size * size;
  cols.setZero(channels * 9, static_cast<Eigen::Index>(area) * samples);
  for (int t = 0; t < samples; ++t) {
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const Eigen::Index col = static_cast<Eigen::Index>(t) * area + y * size + x;
        for (int ky = 0; ky < 3; ++ky) {
          const int sy = y + ky - 1;
          if (sy < 0 || sy >= size) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int sx = x + kx - 1;
            if (sx < 0 || sx >= size) continue;
            const Eigen::Index src_col = static_cast<Eigen::Index>(t) * area + sy * size + sx;
            for (int c = 0; c < channels; ++c) {
              cols(c * 9 + ky * 3 + kx, col) = src(c, src_col);
            }
          }
        }
      }
    }
  }
}

// Adjoint of Im2Col.
template <typename M>
void Col2Im(const M& cols, int channels, int size, int samples, M& dst) {
  const int area = size * size;
  dst.setZero(channels, static_cast<Eigen::Index>(area) * samples);
  for (int t = 0; t < samples; ++t) {
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const Eigen::Index col = static_cast<Eigen::Index>(t) * area + y * size + x;
        for (int ky = 0; ky < 3; ++ky) {
          const int sy = y + ky - 1;
          if (sy < 0 || sy >= size) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int sx = x + kx - 1;
            if (sx < 0 || sx >= size) continue;
            const Eigen::Index dst_col = static_cast<Eigen::Index>(t) * area + sy * size + sx;
            for (int c = 0; c < channels; ++c) {
              dst(c, dst_col) += cols(c * 9 + ky * 3 + kx, col);
            }
          }
        }
      }
    }
  }
}

// 2x2 max pool, stride 2, dropping the odd trailing row/column. Ties keep the
// first element in row-major window order.
template <typename M>
void MaxPool(const M& src, int size, int samples, M& dst, std::vector<Eigen::Index>& arg) {
  const int out = size / 2;
  const int area = size * size;
  const int out_area = out * out;
  dst.resize(src.rows(), static_cast<Eigen::Index>(out_area) * samples);
  arg.resize(static_cast<std::size_t>(dst.size()));
  for (Eigen::Index c = 0; c < src.rows(); ++c) {
    for (int t = 0; t < samples; ++t) {
      for (int py = 0; py < out; ++py) {
        for (int px = 0; px < out; ++px) {
          Eigen::Index best_col = static_cast<Eigen::Index>(t) * area + (2 * py) * size + 2 * px;
          auto best = src(c, best_col);
          for (int dy = 0; dy < 2; ++dy) {
            for (int dx = 0; dx < 2; ++dx) {
              const Eigen::Index col =
                  static_cast<Eigen::Index>(t) * area + (2 * py + dy) * size + 2 * px + dx;
              if (src(c, col) > best) {
                best = src(c, col);
                best_col = col;
              }
            }
          }
          const Eigen::Index o = static_cast<Eigen::Index>(t) * out_area + py * out + px;
          dst(c, o) = best;
          arg[static_cast<std::size_t>(o * src.rows() + c)] = best_col;
        }
      }
    }
  }
}

template <typename M>
void Relu(M& m) {
  m = m.cwiseMax(typename M::Scalar(0));
}

template <typename S>
struct Cache {
  using Matrix = typename Net<S>::Matrix;
  int samples = 0;
  Matrix input;  // [3, 225 T]
  Matrix cols1, act1, pool1;
  std::vector<Eigen::Index> arg1;
  Matrix cols2, act2, pool2;
  std::vector<Eigen::Index> arg2;
  Matrix wp_in, wp_hidden;
  Matrix x0, h1, h2, p1, logits, v1;
  // Softmax and value are kept in double for both precisions.
  Eigen::MatrixXd log_probs, probs, value;
};

template <typename S>
void RunForward(const Net<S>& net, std::span<const ObservationTensor> obs,
                std::span<const WaypointFeature> wp, Cache<S>& c) {
  const NetworkShape& s = net.shape();
  const int T = static_cast<int>(obs.size());
  if (wp.size() != obs.size()) throw ContractViolation("observation/waypoint count mismatch");
  c.samples = T;

  c.input.resize(NetworkShape::kInChannels, static_cast<Eigen::Index>(kInArea) * T);
  c.wp_in.resize(2, T);
  for (int t = 0; t < T; ++t) {
    for (int ch = 0; ch < NetworkShape::kInChannels; ++ch) {
      for (int k = 0; k < kInArea; ++k) {
        c.input(ch, static_cast<Eigen::Index>(t) * kInArea + k) =
            static_cast<S>(obs[t].values[ch * kInArea + k]);
      }
    }
    if (std::abs(wp[t].dx) > 1.0 || std::abs(wp[t].dy) > 1.0) {
      throw ContractViolation("waypoint feature outside [-1, 1]");
    }
    c.wp_in(0, t) = static_cast<S>(wp[t].dx * s.waypoint_gain);
    c.wp_in(1, t) = static_cast<S>(wp[t].dy * s.waypoint_gain);
  }

  Im2Col(c.input, NetworkShape::kInChannels, kIn, T, c.cols1);
  c.act1.noalias() = net.W(kConv1W) * c.cols1;
  c.act1.colwise() += net.B(kConv1B);
  Relu(c.act1);
  CheckFinite(c.act1, "conv1");
  MaxPool(c.act1, kIn, T, c.pool1, c.arg1);

  Im2Col(c.pool1, s.conv1, kP1, T, c.cols2);
  c.act2.noalias() = net.W(kConv2W) * c.cols2;
  c.act2.colwise() += net.B(kConv2B);
  Relu(c.act2);
  CheckFinite(c.act2, "conv2");
  MaxPool(c.act2, kP1, T, c.pool2, c.arg2);

  c.wp_hidden.noalias() = net.W(kWaypointW) * c.wp_in;
  c.wp_hidden.colwise() += net.B(kWaypointB);
  Relu(c.wp_hidden);

  c.x0.resize(s.concat(), T);
  for (int t = 0; t < T; ++t) {
    for (int ch = 0; ch < s.conv2; ++ch) {
      for (int k = 0; k < kP2Area; ++k) {
        c.x0(ch * kP2Area + k, t) = c.pool2(ch, static_cast<Eigen::Index>(t) * kP2Area + k);
      }
    }
  }
  c.x0.bottomRows(s.waypoint_hidden) = c.wp_hidden;

  c.h1.noalias() = net.W(kTrunk1W) * c.x0;
  c.h1.colwise() += net.B(kTrunk1B);
  Relu(c.h1);
  CheckFinite(c.h1, "trunk1");
  c.h2.noalias() = net.W(kTrunk2W) * c.h1;
  c.h2.colwise() += net.B(kTrunk2B);
  Relu(c.h2);
  CheckFinite(c.h2, "trunk2");

  c.p1.noalias() = net.W(kPolicy1W) * c.h2;
  c.p1.colwise() += net.B(kPolicy1B);
  Relu(c.p1);
  c.logits.noalias() = net.W(kPolicy2W) * c.p1;
  c.logits.colwise() += net.B(kPolicy2B);
  CheckFinite(c.logits, "policy");

  c.log_probs.resize(kA, T);
  c.probs.resize(kA, T);
  for (int t = 0; t < T; ++t) {
    const Eigen::VectorXd l = c.logits.col(t).template cast<double>();
    const double m = l.maxCoeff();
    const double lse = m + std::log((l.array() - m).exp().sum());
    c.log_probs.col(t) = l.array() - lse;
    c.probs.col(t) = c.log_probs.col(t).array().exp();
  }

  c.v1.noalias() = net.W(kValue1W) * c.h2;
  c.v1.colwise() += net.B(kValue1B);
  Relu(c.v1);
  c.value = (net.W(kValue2W) * c.v1).template cast<double>();
  c.value.array() += static_cast<double>(net.B(kValue2B)(0));
  c.value *= s.value_scale;
  CheckFinite(c.value, "value");
}

// Gradient of the ReLU output `act` given upstream `grad` (in place).
template <typename M>
void ReluBackward(const M& act, M& grad) {
  using S = typename M::Scalar;
  grad = (act.array() > S(0)).select(grad, S(0));
}

template <typename M>
void Unpool(const M& dpool, const std::vector<Eigen::Index>& arg, Eigen::Index cols, M& dact) {
  dact.setZero(dpool.rows(), cols);
  for (Eigen::Index o = 0; o < dpool.cols(); ++o) {
    for (Eigen::Index ch = 0; ch < dpool.rows(); ++ch) {
      dact(ch, arg[static_cast<std::size_t>(o * dpool.rows() + ch)]) += dpool(ch, o);
    }
  }
}

}  // namespace

ParamSet::ParamSet(const NetworkShape& shape) : shape_(shape), blocks_(MakeBlocks(shape)) {
  data_.assign(blocks_.back().offset + blocks_.back().size, 0.0);
}

Tensor ParamSet::tensor(Block b) const {
  const auto v = block(b);
  return Tensor{blocks_[b].shape, std::vector<double>(v.begin(), v.end())};
}

bool ParamSet::AllFinite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void ParamSet::SetZero() { std::fill(data_.begin(), data_.end(), 0.0); }

ParamSet InitParams(const NetworkShape& shape, std::uint64_t seed) {
  ParamSet p(shape);
  std::mt19937_64 rng(seed);
  const double relu_gain = std::sqrt(2.0);
  const std::array<std::pair<Block, double>, 9> layers = {{{kConv1W, relu_gain},
                                                           {kConv2W, relu_gain},
                                                           {kWaypointW, relu_gain},
                                                           {kTrunk1W, relu_gain},
                                                           {kTrunk2W, relu_gain},
                                                           {kPolicy1W, relu_gain},
                                                           {kPolicy2W, 0.01},
                                                           {kValue1W, relu_gain},
                                                           {kValue2W, 1.0}}};
  for (const auto& [block, gain] : layers) {
    const ParamBlock& blk = p.blocks()[block];
    const double fan_in = static_cast<double>(blk.size / blk.shape[0]);
    const double bound = gain * std::sqrt(3.0 / fan_in);
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& w : p.block(block)) w = dist(rng);
  }
  return p;
}

namespace {

template <typename S>
std::vector<NetworkOutput> ForwardBatchImpl(const ParamSet& params,
                                            std::span<const ObservationTensor> obs,
                                            std::span<const WaypointFeature> wp) {
  const Net<S> net(params);
  Cache<S> c;
  RunForward(net, obs, wp, c);
  std::vector<NetworkOutput> out(obs.size());
  for (std::size_t t = 0; t < obs.size(); ++t) {
    for (int a = 0; a < kA; ++a) {
      out[t].action_probs[a] = c.probs(a, static_cast<Eigen::Index>(t));
      out[t].log_probs[a] = c.log_probs(a, static_cast<Eigen::Index>(t));
    }
    out[t].value = c.value(0, static_cast<Eigen::Index>(t));
  }
  return out;
}

void CheckBatch(std::size_t n, std::span<const Action> actions, std::span<const double> adv,
                std::span<const double> ret) {
  if (n == 0) throw ContractViolation("loss needs at least one sample");
  if (actions.size() != n || adv.size() != n || ret.size() != n) {
    throw ContractViolation("batch fields have different lengths");
  }
}

struct LossTerms {
  double loss, policy, value, entropy;
};

template <typename S>
LossTerms EvaluateLoss(const Cache<S>& c, std::span<const Action> actions,
                       std::span<const double> adv, std::span<const double> ret,
                       const LossConfig& cfg) {
  const int T = c.samples;
  double policy = 0, value = 0, entropy = 0;
  for (int t = 0; t < T; ++t) {
    policy -= c.log_probs(static_cast<int>(actions[t]), t) * adv[t];
    const double e = c.value(0, t) - ret[t];
    value += e * e;
    entropy -= (c.probs.col(t).array() * c.log_probs.col(t).array()).sum();
  }
  policy /= T;
  value /= T;
  entropy /= T;
  return {policy + cfg.value_coef * value - cfg.entropy_coef * entropy, policy, value, entropy};
}

template <typename S>
double LossImpl(const ParamSet& params, std::span<const ObservationTensor> obs,
                std::span<const WaypointFeature> wp, std::span<const Action> actions,
                std::span<const double> advantages, std::span<const double> returns,
                const LossConfig& cfg) {
  const Net<S> net(params);
  Cache<S> c;
  RunForward(net, obs, wp, c);
  return EvaluateLoss(c, actions, advantages, returns, cfg).loss;
}

template <typename S>
LossResult LossAndGradsImpl(const ParamSet& params, std::span<const ObservationTensor> obs,
                            std::span<const WaypointFeature> wp, std::span<const Action> actions,
                            std::span<const double> advantages, std::span<const double> returns,
                            const LossConfig& cfg) {
  using Matrix = typename Net<S>::Matrix;
  const NetworkShape& s = params.shape();
  const Net<S> net(params);
  Cache<S> c;
  RunForward(net, obs, wp, c);
  const int T = c.samples;

  LossResult result;
  const LossTerms terms = EvaluateLoss(c, actions, advantages, returns, cfg);
  result.loss = terms.loss;
  result.policy_loss = terms.policy;
  result.value_loss = terms.value;
  result.entropy = terms.entropy;
  GradBuffer<S> g(params);

  // Heads.
  Matrix dlogits(kA, T);
  Matrix dvalue(1, T);
  for (int t = 0; t < T; ++t) {
    const double h = -(c.probs.col(t).array() * c.log_probs.col(t).array()).sum();
    for (int k = 0; k < kA; ++k) {
      const double p = c.probs(k, t);
      const double onehot = static_cast<int>(actions[t]) == k ? 1.0 : 0.0;
      dlogits(k, t) = static_cast<S>(
          (-advantages[t] * (onehot - p) + cfg.entropy_coef * p * (c.log_probs(k, t) + h)) / T);
    }
    dvalue(0, t) =
        static_cast<S>(2.0 * cfg.value_coef * (c.value(0, t) - returns[t]) / T * s.value_scale);
  }

  g.W(kPolicy2W).noalias() = dlogits * c.p1.transpose();
  g.B(kPolicy2B) = dlogits.rowwise().sum();
  Matrix dp1 = net.W(kPolicy2W).transpose() * dlogits;
  ReluBackward(c.p1, dp1);
  g.W(kPolicy1W).noalias() = dp1 * c.h2.transpose();
  g.B(kPolicy1B) = dp1.rowwise().sum();

  g.W(kValue2W).noalias() = dvalue * c.v1.transpose();
  g.B(kValue2B) = dvalue.rowwise().sum();
  Matrix dv1 = net.W(kValue2W).transpose() * dvalue;
  ReluBackward(c.v1, dv1);
  g.W(kValue1W).noalias() = dv1 * c.h2.transpose();
  g.B(kValue1B) = dv1.rowwise().sum();

  // Trunk.
  Matrix dh2 = net.W(kPolicy1W).transpose() * dp1;
  dh2.noalias() += net.W(kValue1W).transpose() * dv1;
  ReluBackward(c.h2, dh2);
  g.W(kTrunk2W).noalias() = dh2 * c.h1.transpose();
  g.B(kTrunk2B) = dh2.rowwise().sum();
  Matrix dh1 = net.W(kTrunk2W).transpose() * dh2;
  ReluBackward(c.h1, dh1);
  g.W(kTrunk1W).noalias() = dh1 * c.x0.transpose();
  g.B(kTrunk1B) = dh1.rowwise().sum();
  Matrix dx0 = net.W(kTrunk1W).transpose() * dh1;
  CheckFinite(dx0, "trunk1");

  // Waypoint branch.
  Matrix dwp = dx0.bottomRows(s.waypoint_hidden);
  ReluBackward(c.wp_hidden, dwp);
  g.W(kWaypointW).noalias() = dwp * c.wp_in.transpose();
  g.B(kWaypointB) = dwp.rowwise().sum();

  // Convolutions.
  Matrix dpool2(s.conv2, static_cast<Eigen::Index>(kP2Area) * T);
  for (int t = 0; t < T; ++t) {
    for (int ch = 0; ch < s.conv2; ++ch) {
      for (int k = 0; k < kP2Area; ++k) {
        dpool2(ch, static_cast<Eigen::Index>(t) * kP2Area + k) = dx0(ch * kP2Area + k, t);
      }
    }
  }
  Matrix dact2;
  Unpool(dpool2, c.arg2, c.act2.cols(), dact2);
  ReluBackward(c.act2, dact2);
  g.W(kConv2W).noalias() = dact2 * c.cols2.transpose();
  g.B(kConv2B) = dact2.rowwise().sum();
  const Matrix dcols2 = net.W(kConv2W).transpose() * dact2;
  Matrix dpool1;
  Col2Im(dcols2, s.conv1, kP1, T, dpool1);
  Matrix dact1;
  Unpool(dpool1, c.arg1, c.act1.cols(), dact1);
  ReluBackward(c.act1, dact1);
  g.W(kConv1W).noalias() = dact1 * c.cols1.transpose();
  g.B(kConv1B) = dact1.rowwise().sum();

  result.grads = g.ToParamSet();
  if (!result.grads.AllFinite()) throw NumericError("gradients", "non-finite gradient");
  return result;
}

}  // namespace

std::vector<NetworkOutput> ForwardBatch(const ParamSet& params,
                                        std::span<const ObservationTensor> obs,
                                        std::span<const WaypointFeature> wp) {
  return params.shape().single_precision ? ForwardBatchImpl<float>(params, obs, wp)
                                         : ForwardBatchImpl<double>(params, obs, wp);
}

NetworkOutput Forward(const ParamSet& params, const ObservationTensor& obs,
                      const WaypointFeature& wp) {
  return ForwardBatch(params, std::span(&obs, 1), std::span(&wp, 1)).front();
}

double Loss(const ParamSet& params, std::span<const ObservationTensor> obs,
            std::span<const WaypointFeature> wp, std::span<const Action> actions,
            std::span<const double> advantages, std::span<const double> returns,
            const LossConfig& cfg) {
  CheckBatch(obs.size(), actions, advantages, returns);
  return params.shape().single_precision
             ? LossImpl<float>(params, obs, wp, actions, advantages, returns, cfg)
             : LossImpl<double>(params, obs, wp, actions, advantages, returns, cfg);
}

LossResult LossAndGrads(const ParamSet& params, std::span<const ObservationTensor> obs,
                        std::span<const WaypointFeature> wp, std::span<const Action> actions,
                        std::span<const double> advantages, std::span<const double> returns,
                        const LossConfig& cfg) {
  CheckBatch(obs.size(), actions, advantages, returns);
  return params.shape().single_precision
             ? LossAndGradsImpl<float>(params, obs, wp, actions, advantages, returns, cfg)
             : LossAndGradsImpl<double>(params, obs, wp, actions, advantages, returns, cfg);
}

}  // namespace mapper::nn
