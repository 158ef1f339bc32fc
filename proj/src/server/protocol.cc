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

#include "einu/server/protocol.h"

#include <cmath>

#include "einu/common/error.h"

namespace einu::server {

using nlohmann::json;

namespace {

[[noreturn]] void Bad(const std::string& what) { throw Error(ErrorCode::kBadMessage, what); }

double Number(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number()) Bad(std::string("'") + key + "' must be a number");
  const double v = doc.at(key).get<double>();
  if (!std::isfinite(v)) Bad(std::string("'") + key + "' must be finite");
  return v;
}

Eigen::Vector3d Vec3(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array() || doc.at(key).size() != 3) {
    Bad(std::string("'") + key + "' must be an array of 3 numbers");
  }
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    const json& e = doc.at(key)[i];
    if (!e.is_number() || !std::isfinite(e.get<double>())) {
      Bad(std::string("'") + key + "' must hold finite numbers");
    }
    v[i] = e.get<double>();
  }
  return v;
}

template <typename T>
std::optional<T> OptionalString(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  if (!doc.at(key).is_string()) Bad(std::string("'") + key + "' must be a string or null");
  return doc.at(key).get<std::string>();
}

}  // namespace

ClientMessage ParseClientMessage(const json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string()) {
    Bad("message needs a string 'type'");
  }
  const std::string type = doc.at("type").get<std::string>();
  if (type == "place_sound") {
    PlaceSound m;
    m.position = {Number(doc, "x"), Number(doc, "y")};
    if (auto name = OptionalString<std::string>(doc, "emotion")) {
      m.emotion = emotion::ParseEmotion(*name);
    }
    m.waveform = OptionalString<std::string>(doc, "waveform");
    if (!m.emotion && !m.waveform) Bad("place_sound needs an emotion or a waveform");
    return m;
  }
  if (type == "video_features") {
    if (!doc.contains("features") || !doc.at("features").is_array() || doc.at("features").empty()) {
      Bad("'features' must be a non-empty array");
    }
    const json& f = doc.at("features");
    VideoFeatures m;
    m.features.resize(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!f[i].is_number() || !std::isfinite(f[i].get<double>())) {
        Bad("'features' must hold finite numbers");
      }
      m.features[static_cast<Eigen::Index>(i)] = f[i].get<double>();
    }
    return m;
  }
  if (type == "set_terrain") {
    if (!doc.contains("kind") || !doc.at("kind").is_string()) Bad("'kind' must be a string");
    SetTerrain m;
    try {
      m.kind = sim::ParseTerrainKind(doc.at("kind").get<std::string>());
    } catch (const Error& e) {
      Bad(e.what());
    }
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) Bad("'seed' must be a non-negative integer");
      m.seed = doc.at("seed").get<std::uint64_t>();
    }
    return m;
  }
  if (type == "pose") return PoseCommand{Vec3(doc, "pos"), Vec3(doc, "rpy")};
  if (type == "pause") return Pause{};
  if (type == "resume") return Resume{};
  Bad("unknown message type '" + type + "'");
}

ClientMessage ParseClientMessage(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    Bad(std::string("not JSON: ") + e.what());
  }
  return ParseClientMessage(doc);
}

json ClientMessageToJson(const ClientMessage& message) {
  struct Visitor {
    json operator()(const PlaceSound& m) const {
      return {{"type", "place_sound"},
              {"x", m.position.x()},
              {"y", m.position.y()},
              {"emotion", m.emotion ? json(std::string(emotion::EmotionName(*m.emotion))) : json()},
              {"waveform", m.waveform ? json(*m.waveform) : json()}};
    }
    json operator()(const VideoFeatures& m) const {
      return {{"type", "video_features"},
              {"features", std::vector<double>(m.features.data(),
                                               m.features.data() + m.features.size())}};
    }
    json operator()(const SetTerrain& m) const {
      return {{"type", "set_terrain"}, {"kind", sim::TerrainKindName(m.kind)}, {"seed", m.seed}};
    }
    json operator()(const PoseCommand& m) const {
      return {{"type", "pose"},
              {"pos", {m.position.x(), m.position.y(), m.position.z()}},
              {"rpy", {m.rpy.x(), m.rpy.y(), m.rpy.z()}}};
    }
    json operator()(const Pause&) const { return {{"type", "pause"}}; }
    json operator()(const Resume&) const { return {{"type", "resume"}}; }
  };
  return std::visit(Visitor{}, message);
}

json StateToJson(const StateMessage& s) {
  return {{"type", "state"},
          {"tick", s.tick},
          {"time", s.time},
          {"base",
           {{"pos", {s.position.x(), s.position.y(), s.position.z()}},
            {"rpy", {s.rpy.x(), s.rpy.y(), s.rpy.z()}}}},
          {"joints", s.joints},
          {"behavior", s.behavior},
          {"emotion", s.emotion ? json(*s.emotion) : json()},
          {"heading_target", s.heading_target ? json(*s.heading_target) : json()}};
}

StateMessage StateFromJson(const json& doc) {
  StateMessage s;
  try {
    s.tick = doc.at("tick").get<std::uint64_t>();
    s.time = doc.at("time").get<double>();
    const auto pos = doc.at("base").at("pos").get<std::array<double, 3>>();
    const auto rpy = doc.at("base").at("rpy").get<std::array<double, 3>>();
    s.position = {pos[0], pos[1], pos[2]};
    s.rpy = {rpy[0], rpy[1], rpy[2]};
    s.joints = doc.at("joints").get<std::array<double, 8>>();
    s.behavior = doc.at("behavior").get<std::string>();
    if (!doc.at("emotion").is_null()) s.emotion = doc.at("emotion").get<std::string>();
    if (!doc.at("heading_target").is_null()) {
      s.heading_target = doc.at("heading_target").get<double>();
    }
  } catch (const json::exception& e) {
    Bad(std::string("state message: ") + e.what());
  }
  return s;
}

json EventMessage(std::string_view kind, json fields) {
  json doc = {{"type", "event"}, {"kind", kind}};
  if (fields.is_object()) {
    for (auto& [key, value] : fields.items()) doc[key] = value;
  }
  return doc;
}

}  // namespace einu::server
