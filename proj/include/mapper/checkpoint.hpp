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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mapper/network.hpp"
#include "mapper/optimizer.hpp"

namespace mapper::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Binary checkpoint: "MAPPERCK", format version, a JSON metadata block
// (network shape, training counters, generator states) and the raw
// little-endian doubles of every ParamSet and optimizer state.
struct Checkpoint {
  nlohmann::json meta = nlohmann::json::object();
  std::vector<ParamSet> params;
  std::vector<OptimizerState> optimizers;
};

std::string SerializeCheckpoint(const Checkpoint& ckpt);
Checkpoint DeserializeCheckpoint(const std::string& bytes);

void WriteCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint ReadCheckpoint(const std::filesystem::path& path);

nlohmann::json ShapeToJson(const NetworkShape& shape);
NetworkShape ShapeFromJson(const nlohmann::json& j);

}  // namespace mapper::nn
