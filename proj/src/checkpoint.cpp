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

#include "mapper/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mapper/errors.hpp"

namespace mapper::nn {

static_assert(std::endian::native == std::endian::little, "checkpoints assume little-endian");

namespace {

constexpr char kMagic[8] = {'M', 'A', 'P', 'P', 'E', 'R', 'C', 'K'};

template <typename T>
void Put(std::string& out, const T& v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

void PutDoubles(std::string& out, const std::vector<double>& v) {
  Put<std::uint64_t>(out, v.size());
  out.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T Get() {
    Need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  std::string GetString(std::size_t n) {
    Need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::vector<double> GetDoubles(std::size_t expected) {
    const auto n = Get<std::uint64_t>();
    if (n != expected) throw CheckpointError("checkpoint array has unexpected length");
    Need(n * sizeof(double));
    std::vector<double> v(n);
    std::memcpy(v.data(), bytes_.data() + pos_, n * sizeof(double));
    pos_ += n * sizeof(double);
    return v;
  }

  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  void Need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw CheckpointError("checkpoint truncated");
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

nlohmann::json ShapeToJson(const NetworkShape& s) {
  return {{"conv1", s.conv1},   {"conv2", s.conv2},   {"waypoint_hidden", s.waypoint_hidden},
          {"trunk1", s.trunk1}, {"trunk2", s.trunk2}, {"head_hidden", s.head_hidden}, {"value_scale", s.value_scale},
          {"waypoint_gain", s.waypoint_gain},
          {"single_precision", s.single_precision}};
}

NetworkShape ShapeFromJson(const nlohmann::json& j) {
  NetworkShape s;
  s.conv1 = j.at("conv1").get<int>();
  s.conv2 = j.at("conv2").get<int>();
  s.waypoint_hidden = j.at("waypoint_hidden").get<int>();
  s.trunk1 = j.at("trunk1").get<int>();
  s.trunk2 = j.at("trunk2").get<int>();
  s.head_hidden = j.at("head_hidden").get<int>();
  s.value_scale = j.value("value_scale", 1.0);
  s.waypoint_gain = j.value("waypoint_gain", 1.0);
  s.single_precision = j.value("single_precision", false);
  return s;
}

std::string SerializeCheckpoint(const Checkpoint& ckpt) {
  if (ckpt.optimizers.size() != ckpt.params.size()) {
    throw ContractViolation("checkpoint needs one optimizer state per parameter set");
  }
  nlohmann::json meta = ckpt.meta;
  meta["networks"] = nlohmann::json::array();
  for (const ParamSet& p : ckpt.params) meta["networks"].push_back(ShapeToJson(p.shape()));
  const std::string meta_text = meta.dump();

  std::string out(kMagic, sizeof(kMagic));
  Put<std::uint32_t>(out, kCheckpointVersion);
  Put<std::uint64_t>(out, meta_text.size());
  out += meta_text;
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(ckpt.params.size()));
  for (std::size_t i = 0; i < ckpt.params.size(); ++i) {
    const auto v = ckpt.params[i].values();
    PutDoubles(out, std::vector<double>(v.begin(), v.end()));
    const OptimizerState& o = ckpt.optimizers[i];
    Put<std::int64_t>(out, o.step);
    Put<double>(out, o.lr);
    Put<double>(out, o.beta1);
    Put<double>(out, o.beta2);
    Put<double>(out, o.eps);
    PutDoubles(out, o.m);
    PutDoubles(out, o.v);
  }
  return out;
}

Checkpoint DeserializeCheckpoint(const std::string& bytes) {
  Reader in(bytes);
  if (in.GetString(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic))) {
    throw CheckpointError("not a checkpoint file");
  }
  const auto version = in.Get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw CheckpointError("incompatible checkpoint version " + std::to_string(version));
  }
  Checkpoint ckpt;
  try {
    ckpt.meta = nlohmann::json::parse(in.GetString(in.Get<std::uint64_t>()));
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint metadata: ") + e.what());
  }
  const auto count = in.Get<std::uint32_t>();
  std::vector<NetworkShape> shapes;
  try {
    for (const auto& j : ckpt.meta.at("networks")) shapes.push_back(ShapeFromJson(j));
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint metadata: ") + e.what());
  }
  if (shapes.size() != count) throw CheckpointError("checkpoint network count mismatch");
  for (std::uint32_t i = 0; i < count; ++i) {
    ParamSet p(shapes[i]);
    const std::vector<double> values = in.GetDoubles(p.size());
    std::copy(values.begin(), values.end(), p.values().begin());
    OptimizerState o;
    o.step = in.Get<std::int64_t>();
    o.lr = in.Get<double>();
    o.beta1 = in.Get<double>();
    o.beta2 = in.Get<double>();
    o.eps = in.Get<double>();
    o.m = in.GetDoubles(p.size());
    o.v = in.GetDoubles(p.size());
    ckpt.params.push_back(std::move(p));
    ckpt.optimizers.push_back(std::move(o));
  }
  if (!in.AtEnd()) throw CheckpointError("trailing bytes after checkpoint");
  ckpt.meta.erase("networks");
  return ckpt;
}

void WriteCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  const std::string bytes = SerializeCheckpoint(ckpt);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw CheckpointError("cannot write checkpoint " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CheckpointError("failed writing checkpoint " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint ReadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return DeserializeCheckpoint(ss.str());
}

}  // namespace mapper::nn
