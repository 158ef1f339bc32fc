// Copyright 2026 The einu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EINU_SERVER_PROTOCOL_H_
#define EINU_SERVER_PROTOCOL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Core>
#include <json.hpp>

#include "einu/emotion/labels.h"
#include "einu/sim/terrain.h"

namespace einu::server {

// Client -> server messages (JSON text frames, discriminated by "type").

struct PlaceSound {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // world frame, m
  std::optional<emotion::Emotion> emotion;             // operator hint
  std::optional<std::string> waveform;                 // preset name
};

struct VideoFeatures {
  Eigen::VectorXd features;
};

struct SetTerrain {
  sim::TerrainKind kind = sim::TerrainKind::kFlat;
  std::uint64_t seed = 0;
};

struct PoseCommand {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d rpy = Eigen::Vector3d::Zero();
};

struct Pause {};
struct Resume {};

using ClientMessage =
    std::variant<PlaceSound, VideoFeatures, SetTerrain, PoseCommand, Pause, Resume>;

// Throws BadMessage (malformed JSON, unknown type, missing or non-finite
// fields, place_sound with neither emotion nor waveform) or UnknownEmotion.
ClientMessage ParseClientMessage(const nlohmann::json& doc);
ClientMessage ParseClientMessage(std::string_view text);
nlohmann::json ClientMessageToJson(const ClientMessage& message);

// Server -> client telemetry, one per control tick.
struct StateMessage {
  std::uint64_t tick = 0;
  double time = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d rpy = Eigen::Vector3d::Zero();
  std::array<double, 8> joints{};
  std::string behavior = "Hold";
  std::optional<std::string> emotion;
  std::optional<double> heading_target;
};

nlohmann::json StateToJson(const StateMessage& state);
StateMessage StateFromJson(const nlohmann::json& doc);

// {"type":"event","kind":kind, ...fields}
nlohmann::json EventMessage(std::string_view kind, nlohmann::json fields);

}  // namespace einu::server

#endif  // EINU_SERVER_PROTOCOL_H_
